#include "isc/poset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "isc/errors.hpp"

namespace isc {

StratifiedPoset StratifiedPoset::build(std::vector<RawCell> cells, const std::vector<RawIncidence>& incidence,
                                       const std::vector<Stratum>& strata) {
  StratifiedPoset p;
  std::map<std::string, int> sidx;
  bool has_top = false;
  for (const auto& s : strata) {
    if (s.codim == 1) throw ForbiddenCodimensionOne(s.name);
    if (s.codim < 0) throw InvalidInput("negative codimension for stratum " + s.name);
    if (!sidx.emplace(s.name, static_cast<int>(p.strata_.size())).second)
      throw InvalidInput("duplicate stratum " + s.name);
    if (s.codim == 0) has_top = true;
    p.strata_.push_back(s);
  }
  if (!has_top) throw InvalidInput("no stratum of codimension 0");

  std::sort(cells.begin(), cells.end(),
            [](const RawCell& a, const RawCell& b) { return a.dim != b.dim ? a.dim < b.dim : a.id < b.id; });
  for (const auto& rc : cells) {
    if (rc.dim < 0) throw InvalidInput("negative dimension for cell " + rc.id);
    auto it = sidx.find(rc.stratum);
    if (it == sidx.end()) throw InvalidInput("cell " + rc.id + " in unknown stratum " + rc.stratum);
    if (!p.index_.emplace(rc.id, static_cast<int>(p.cells_.size())).second)
      throw InvalidInput("duplicate cell " + rc.id);
    p.cells_.push_back({rc.id, rc.dim, it->second});
    p.dim_ = std::max(p.dim_, rc.dim);
  }
  const int n = p.size();
  p.up_.assign(n, {});
  p.down_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (const auto& ri : incidence) {
    int t = p.index(ri.coface), s = p.index(ri.face);
    if (p.cells_[t].dim != p.cells_[s].dim + 1)
      throw InvalidInput("incidence " + ri.coface + " > " + ri.face + " is not codimension one");
    if (ri.sign != 1 && ri.sign != -1) throw InvalidInput("incidence sign must be +-1");
    if (!seen.emplace(t, s).second) throw InvalidInput("duplicate incidence " + ri.coface + " > " + ri.face);
    p.edges_.push_back({t, s, ri.sign});
  }
  std::sort(p.edges_.begin(), p.edges_.end(), [](const Incidence& a, const Incidence& b) {
    return a.face != b.face ? a.face < b.face : a.coface < b.coface;
  });
  for (int e = 0; e < static_cast<int>(p.edges_.size()); ++e) {
    p.up_[p.edges_[e].face].push_back(e);
    p.down_[p.edges_[e].coface].push_back(e);
  }

  // boundary of boundary vanishes
  for (int t = 0; t < n; ++t) {
    std::map<int, int> acc;
    for (int e1 : p.down_[t])
      for (int e2 : p.down_[p.edges_[e1].face]) acc[p.edges_[e2].face] += p.edges_[e1].sign * p.edges_[e2].sign;
    for (const auto& [s, v] : acc)
      if (v != 0) throw InvalidInput("incidence signs violate dd=0 between " + p.cells_[t].id + " and " + p.cells_[s].id);
  }

  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  p.above_.assign(n, std::vector<std::uint64_t>(words, 0));
  for (int c = n - 1; c >= 0; --c) {
    p.above_[c][c >> 6] |= std::uint64_t{1} << (c & 63);
    for (int e : p.up_[c]) {
      const auto& src = p.above_[p.edges_[e].coface];
      for (std::size_t w = 0; w < words; ++w) p.above_[c][w] |= src[w];
    }
  }

  // X_{d-k} must be closed for every k: faces are at least as deep as cofaces
  for (const auto& e : p.edges_)
    if (p.codim(e.face) < p.codim(e.coface)) throw StratumNotClosed(p.cells_[e.coface].id, p.cells_[e.face].id);
  return p;
}

int StratifiedPoset::index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InvalidInput("unknown cell " + id);
  return it->second;
}

std::vector<int> StratifiedPoset::above(int c, bool strict) const {
  std::vector<int> out;
  for (int t = c; t < size(); ++t)
    if (leq(c, t) && !(strict && t == c)) out.push_back(t);
  return out;
}

std::vector<int> StratifiedPoset::below(int c, bool strict) const {
  std::vector<int> out;
  for (int s = 0; s <= c; ++s)
    if (leq(s, c) && !(strict && s == c)) out.push_back(s);
  return out;
}

std::vector<int> StratifiedPoset::singular_codims() const {
  std::set<int> ks;
  for (int c = 0; c < size(); ++c)
    if (codim(c) > 0) ks.insert(codim(c));
  return {ks.begin(), ks.end()};
}

std::vector<RawCell> StratifiedPoset::raw_cells() const {
  std::vector<RawCell> out;
  for (const auto& c : cells_) out.push_back({c.id, c.dim, strata_[c.stratum].name});
  return out;
}

std::vector<RawIncidence> StratifiedPoset::raw_incidence() const {
  std::vector<RawIncidence> out;
  for (const auto& e : edges_) out.push_back({cells_[e.coface].id, cells_[e.face].id, e.sign});
  return out;
}

std::vector<std::vector<int>> StratifiedPoset::facets() const {
  std::vector<std::vector<int>> out;
  for (int c = 0; c < size(); ++c)
    if (up_[c].empty()) out.push_back(verts_[c]);
  return out;
}

bool Selection::is_up_closed() const {
  for (int c : cells)
    for (int e : parent->up_edges(c))
      if (!contains(parent->edges()[e].coface)) return false;
  return true;
}

bool Selection::is_down_closed() const {
  for (int c : cells)
    for (int e : parent->down_edges(c))
      if (!contains(parent->edges()[e].face)) return false;
  return true;
}

Selection make_selection(PosetPtr p, std::vector<int> cells, SelKind kind) {
  Selection s;
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  s.mask.assign(p->size(), 0);
  for (int c : cells) {
    if (c < 0 || c >= p->size()) throw InvalidInput("selection cell out of range");
    s.mask[c] = 1;
  }
  s.parent = std::move(p);
  s.cells = std::move(cells);
  s.kind = kind;
  if (kind == SelKind::Open && !s.is_up_closed()) throw InvalidInput("open selection is not up-closed");
  if (kind == SelKind::Closed && !s.is_down_closed()) throw InvalidInput("closed selection is not down-closed");
  return s;
}

Selection full_selection(PosetPtr p) {
  std::vector<int> all(p->size());
  for (int c = 0; c < p->size(); ++c) all[c] = c;
  return make_selection(std::move(p), std::move(all), SelKind::Closed);
}

StratifiedPoset from_simplicial(const std::vector<std::vector<int>>& facets, const std::map<int, std::string>& labels) {
  if (facets.empty()) throw InvalidInput("no facets");
  std::set<std::vector<int>> facet_set;
  std::set<std::vector<int>> simplices;
  for (auto f : facets) {
    if (f.empty()) throw InvalidInput("empty facet");
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw InvalidInput("repeated vertex in facet");
    if (!facet_set.insert(f).second) throw InvalidInput("duplicate facet");
    const int k = static_cast<int>(f.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < k; ++i)
        if (mask & (1 << i)) s.push_back(f[i]);
      simplices.insert(std::move(s));
    }
  }
  auto label = [&](int v) {
    auto it = labels.find(v);
    return it == labels.end() ? std::to_string(v) : it->second;
  };
  auto name = [&](const std::vector<int>& s) {
    std::string id;
    for (std::size_t i = 0; i < s.size(); ++i) id += (i ? "," : "") + label(s[i]);
    return id;
  };
  std::vector<RawCell> cells;
  std::vector<RawIncidence> inc;
  std::map<std::string, std::vector<int>> by_id;
  for (const auto& s : simplices) {
    std::string id = name(s);
    if (!by_id.emplace(id, s).second) throw InvalidInput("vertex labels collide: " + id);
    cells.push_back({id, static_cast<int>(s.size()) - 1, "top"});
    if (s.size() < 2) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<int> face;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) face.push_back(s[j]);
      inc.push_back({id, name(face), (i % 2 == 0) ? 1 : -1});
    }
  }
  StratifiedPoset p = StratifiedPoset::build(std::move(cells), inc, {{"top", 0}});
  p.verts_.resize(p.size());
  for (int c = 0; c < p.size(); ++c) p.verts_[c] = by_id.at(p.cell(c).id);
  p.labels_ = labels;
  return p;
}

StratifiedPoset assign_strata(const StratifiedPoset& p, const std::map<std::string, std::string>& assignment,
                              const std::map<std::string, int>& codims) {
  std::vector<Stratum> strata;
  for (const auto& [name, k] : codims) strata.push_back({name, k});
  std::vector<RawCell> cells = p.raw_cells();
  for (auto& rc : cells) {
    auto it = assignment.find(rc.id);
    if (it == assignment.end()) throw InvalidInput("assignment missing cell " + rc.id);
    rc.stratum = it->second;
  }
  StratifiedPoset q = StratifiedPoset::build(std::move(cells), p.raw_incidence(), strata);
  q.verts_ = p.verts_;
  q.labels_ = p.labels_;
  return q;
}

Selection open_complement(PosetPtr p, int k) {
  std::vector<int> cells;
  for (int c = 0; c < p->size(); ++c)
    if (p->codim(c) < k) cells.push_back(c);
  return make_selection(std::move(p), std::move(cells), SelKind::Open);
}

Selection stratum_selection(PosetPtr p, int k) {
  std::vector<int> cells;
  for (int c = 0; c < p->size(); ++c)
    if (p->codim(c) == k) cells.push_back(c);
  return make_selection(std::move(p), std::move(cells), SelKind::Stratum);
}

std::vector<int> star_subposet(const StratifiedPoset& p, int sigma, const Selection& within) {
  if (sigma < 0 || sigma >= p.size()) throw InvalidInput("unknown cell");
  std::vector<int> out;
  for (int t : p.above(sigma, false))
    if (within.contains(t)) out.push_back(t);
  return out;
}

std::vector<std::vector<int>> read_facets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::vector<std::vector<int>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::vector<int> f;
    int v;
    while (ss >> v) f.push_back(v);
    if (!f.empty()) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace isc
