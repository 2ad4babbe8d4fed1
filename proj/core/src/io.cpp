#include "isc/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "isc/errors.hpp"
#include "json.hpp"

namespace isc {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << content;
}

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

// a reference into j, unlike field<json> which copies
const json& node(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidInput(std::string("field '") + key + "' has the wrong type");
  }
}

Rational rational_of(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  throw InvalidInput("rationals must be strings \"p/q\" or integers");
}

json matrix_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(std::move(r));
  }
  return rows;
}

RatMatrix matrix_of(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw InvalidInput("matrix must be an array of rows");
  RatMatrix m(rows, cols);
  if (rows == 0) {
    for (const auto& r : j)
      if (!r.is_array() || !r.empty()) throw InvalidInput("matrix has rows where none are expected");
    return m;
  }
  if (j.size() != rows) throw InvalidInput("matrix has the wrong number of rows");
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InvalidInput("matrix row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_of(j[i][c]);
  }
  return m;
}

}  // namespace

std::string space_to_json(const StratifiedPoset& p) {
  json j;
  j["cells"] = json::array();
  for (const auto& c : p.raw_cells()) j["cells"].push_back({{"id", c.id}, {"dim", c.dim}, {"stratum", c.stratum}});
  j["incidence"] = json::array();
  for (const auto& e : p.raw_incidence()) j["incidence"].push_back(json::array({e.coface, e.face, e.sign}));
  j["strata"] = json::array();
  for (const auto& s : p.strata()) j["strata"].push_back({{"name", s.name}, {"codim", s.codim}});
  return j.dump(1) + "\n";
}

StratifiedPoset space_from_json(const std::string& text) {
  json j = parse(text);
  std::vector<RawCell> cells;
  for (const auto& c : node(j, "cells"))
    cells.push_back({field<std::string>(c, "id"), field<int>(c, "dim"), field<std::string>(c, "stratum")});
  std::vector<RawIncidence> inc;
  for (const auto& e : node(j, "incidence")) {
    if (!e.is_array() || e.size() != 3) throw InvalidInput("incidence entries are [coface, face, sign]");
    try {
      inc.push_back({e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<int>()});
    } catch (const json::exception&) {
      throw InvalidInput("incidence entries are [coface, face, sign]");
    }
  }
  std::vector<Stratum> strata;
  for (const auto& s : node(j, "strata")) strata.push_back({field<std::string>(s, "name"), field<int>(s, "codim")});
  return StratifiedPoset::build(std::move(cells), inc, strata);
}

StratifiedPoset load_space(const std::string& path) { return space_from_json(read_file(path)); }

void save_space(const StratifiedPoset& p, const std::string& path) { write_file(path, space_to_json(p)); }

std::string sheaf_to_json(const SheafComplex& k, const std::string& base_ref) {
  const auto& p = *k.base.parent;
  json j;
  j["base"] = base_ref;
  j["terms"] = json::array();
  j["differentials"] = json::array();
  for (int n = k.lo; n <= k.hi(); ++n) {
    const CellSheaf& f = k.terms[n - k.lo];
    json t;
    t["deg"] = n;
    json stalks = json::object();
    for (int c : k.base.cells) stalks[p.cell(c).id] = f.dims[c];
    t["stalks"] = std::move(stalks);
    json res = json::array();
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!f.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      res.push_back(json::array({p.cell(ed.face).id, p.cell(ed.coface).id, matrix_json(f.res[e])}));
    }
    t["restrictions"] = std::move(res);
    j["terms"].push_back(std::move(t));
    json maps = json::object();
    for (int c : k.base.cells) maps[p.cell(c).id] = matrix_json(k.diff(n, c));
    j["differentials"].push_back({{"deg", n}, {"maps", std::move(maps)}});
  }
  return j.dump(1) + "\n";
}

ComplexPtr sheaf_from_json(const std::string& text, const PosetPtr& space) {
  json j = parse(text);
  const auto& p = *space;
  const json& terms = node(j, "terms");
  if (!terms.is_array()) throw InvalidInput("'terms' must be an array");
  std::set<int> cells;
  std::map<int, const json*> by_deg;
  for (const auto& t : terms) {
    int n = field<int>(t, "deg");
    if (by_deg.count(n)) throw InvalidInput("degree listed twice in terms");
    by_deg[n] = &t;
    for (const auto& [id, d] : node(t, "stalks").items()) {
      if (!p.has(id)) throw InvalidInput("unknown cell '" + id + "' in sheaf");
      cells.insert(p.index(id));
    }
  }
  Selection base = make_selection(space, std::vector<int>(cells.begin(), cells.end()), SelKind::Any);
  if (by_deg.empty()) return zero_complex(base);
  SheafComplex k;
  k.base = base;
  k.lo = by_deg.begin()->first;
  const int hi = by_deg.rbegin()->first;
  if (static_cast<int>(by_deg.size()) != hi - k.lo + 1) throw InvalidInput("sheaf degrees must be consecutive");
  std::map<int, const json*> diffs;
  if (j.contains("differentials"))
    for (const auto& d : node(j, "differentials")) diffs[field<int>(d, "deg")] = &d;
  for (int n = k.lo; n <= hi; ++n) {
    const json& t = *by_deg[n];
    CellSheaf f = zero_sheaf(base);
    for (const auto& [id, d] : t.at("stalks").items()) {
      int v = d.get<int>();
      if (v < 0) throw InvalidInput("negative stalk dimension");
      f.dims[p.index(id)] = v;
    }
    std::map<std::pair<int, int>, const json*> given;
    if (t.contains("restrictions"))
      for (const auto& r : t.at("restrictions")) {
        if (!r.is_array() || r.size() != 3) throw InvalidInput("restrictions are [face, coface, matrix]");
        const std::string fa = r[0].get<std::string>(), co = r[1].get<std::string>();
        if (!p.has(fa) || !p.has(co)) throw InvalidInput("restriction names an unknown cell");
        given[{p.index(fa), p.index(co)}] = &r[2];
      }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!f.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      auto it = given.find({ed.face, ed.coface});
      const std::size_t rows = f.dims[ed.coface], cols = f.dims[ed.face];
      if (it == given.end()) {
        if (rows && cols) throw InvalidInput("missing restriction " + p.cell(ed.face).id + " -> " + p.cell(ed.coface).id);
        f.res[e] = RatMatrix(rows, cols);
      } else {
        f.res[e] = matrix_of(*it->second, rows, cols);
      }
    }
    k.terms.push_back(std::move(f));
  }
  for (int n = k.lo; n <= hi; ++n) {
    std::vector<RatMatrix> d(p.size());
    const CellSheaf& f = k.terms[n - k.lo];
    auto it = diffs.find(n);
    for (int c : base.cells) {
      const std::size_t rows = n < hi ? k.terms[n + 1 - k.lo].dims[c] : 0;
      const std::size_t cols = f.dims[c];
      const json* m = nullptr;
      if (it != diffs.end() && it->second->contains("maps") && it->second->at("maps").contains(p.cell(c).id))
        m = &it->second->at("maps").at(p.cell(c).id);
      if (m) d[c] = matrix_of(*m, rows, cols);
      else if (rows && cols) throw InvalidInput("missing differential at " + p.cell(c).id + " in degree " + std::to_string(n));
      else d[c] = RatMatrix(rows, cols);
    }
    k.d.push_back(std::move(d));
  }
  try {
    k.validate();
  } catch (const InvariantViolation& e) {
    throw InvalidInput(std::string("sheaf data: ") + e.what());
  }
  return make_complex(std::move(k));
}

ComplexPtr load_sheaf(const std::string& path, const PosetPtr& space) {
  return sheaf_from_json(read_file(path), space);
}

void save_sheaf(const SheafComplex& k, const std::string& base_ref, const std::string& path) {
  write_file(path, sheaf_to_json(k, base_ref));
}

std::string ascii_page(const SpectralPage& page) {
  int pmax = 0, qmin = 0, qmax = 0;
  for (const auto& [pq, v] : page.entries) {
    pmax = std::max(pmax, pq.first);
    qmin = std::min(qmin, pq.second);
    qmax = std::max(qmax, pq.second);
  }
  std::ostringstream out;
  out << "E_" << page.r << "\n";
  for (int q = qmax; q >= qmin; --q) {
    out << "q=" << q << (q < 10 && q >= 0 ? " " : "") << " |";
    for (int p = 0; p <= pmax; ++p) out << ' ' << page.entry(p, q);
    out << "\n";
  }
  out << "     +";
  for (int p = 0; p <= pmax; ++p) out << "--";
  out << "\n      ";
  for (int p = 0; p <= pmax; ++p) out << ' ' << p;
  out << "  (p)\n";
  for (const auto& [pq, m] : page.differentials)
    if (!m.is_zero())
      out << "d_" << page.r << "^{" << pq.first << "," << pq.second << "} rank " << rank(m) << "\n";
  return out.str();
}

}  // namespace isc
