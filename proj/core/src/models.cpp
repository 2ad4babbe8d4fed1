#include "isc/models.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>

#include "isc/errors.hpp"


#ifndef ISC_DEFAULT_DATA_DIR
#define ISC_DEFAULT_DATA_DIR "data"
#endif

namespace isc {

namespace {

std::string& data_dir_ref() {
  static std::string dir = [] {
    if (const char* env = std::getenv("ISC_DATA_DIR")) return std::string(env);
#ifdef ISC_SOURCE_DATA_DIR
    // uninstalled builds read the source tree
    if (!std::filesystem::exists(ISC_DEFAULT_DATA_DIR)) return std::string(ISC_SOURCE_DATA_DIR);
#endif
    return std::string(ISC_DEFAULT_DATA_DIR);
  }();
  return dir;
}

std::string vertex_label(const StratifiedPoset& p, int v) {
  auto it = p.vertex_labels().find(v);
  return it == p.vertex_labels().end() ? std::to_string(v) : it->second;
}

std::vector<int> all_vertices(const StratifiedPoset& p) {
  std::set<int> vs;
  for (const auto& f : p.facets()) vs.insert(f.begin(), f.end());
  return {vs.begin(), vs.end()};
}

void require_simplicial(const StratifiedPoset& p, const char* what) {
  if (!p.is_simplicial()) throw InvalidInput(std::string(what) + " needs a simplicial complex");
}

// index of the cell of p with the given sorted vertex set
std::map<std::vector<int>, int> vertex_index(const StratifiedPoset& p) {
  std::map<std::vector<int>, int> m;
  for (int c = 0; c < p.size(); ++c) m.emplace(p.vertices(c), c);
  return m;
}

StratifiedPoset with_strata(const StratifiedPoset& raw, const std::function<std::string(int)>& stratum_of,
                            const std::map<std::string, int>& codims) {
  std::map<std::string, std::string> assignment;
  std::map<std::string, int> used;
  for (int c = 0; c < raw.size(); ++c) {
    std::string s = stratum_of(c);
    assignment[raw.cell(c).id] = s;
    used[s] = codims.at(s);
  }
  return assign_strata(raw, assignment, used);
}

}  // namespace

void set_data_dir(const std::string& dir) { data_dir_ref() = dir; }
const std::string& data_dir() { return data_dir_ref(); }

StratifiedPoset boundary_simplex(int n) {
  if (n < 1) throw InvalidInput("boundary_simplex needs n >= 1");
  std::vector<std::vector<int>> facets;
  for (int skip = 1; skip <= n + 1; ++skip) {
    std::vector<int> f;
    for (int v = 1; v <= n + 1; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(std::move(f));
  }
  return from_simplicial(facets);
}

StratifiedPoset cycle_graph(int k) {
  if (k < 3) throw InvalidInput("cycle_graph needs k >= 3");
  std::vector<std::vector<int>> facets;
  for (int i = 1; i <= k; ++i) facets.push_back({i, i % k + 1});
  return from_simplicial(facets);
}

StratifiedPoset path_graph(int k) {
  if (k < 1) throw InvalidInput("path_graph needs k >= 1");
  if (k == 1) return point_space();
  std::vector<std::vector<int>> facets;
  for (int i = 1; i < k; ++i) facets.push_back({i, i + 1});
  return from_simplicial(facets);
}

StratifiedPoset point_space() { return from_simplicial({{1}}); }

StratifiedPoset torus7() { return from_simplicial(read_facets(data_dir() + "/torus_7.facets")); }

StratifiedPoset cp2_9() { return from_simplicial(read_facets(data_dir() + "/cp2_9.facets")); }

StratifiedPoset cone_space(const StratifiedPoset& l, int apex_codim) {
  require_simplicial(l, "cone_space");
  auto verts = all_vertices(l);
  const int apex = verts.back() + 1;
  auto labels = l.vertex_labels();
  labels[apex] = "c";
  std::vector<std::vector<int>> facets;
  for (auto f : l.facets()) {
    f.push_back(apex);
    facets.push_back(std::move(f));
  }
  StratifiedPoset raw = from_simplicial(facets, labels);
  auto lidx = vertex_index(l);
  std::map<std::string, int> codims;
  for (const auto& s : l.strata()) codims[s.name] = s.codim;
  if (codims.count("apex")) throw InvalidInput("cone_space: stratum name apex already used");
  codims["apex"] = apex_codim >= 0 ? apex_codim : l.dim() + 1;
  return with_strata(
      raw,
      [&](int c) {
        std::vector<int> v = raw.vertices(c);
        v.erase(std::remove(v.begin(), v.end(), apex), v.end());
        if (v.empty()) return std::string("apex");
        return l.strata()[l.cell(lidx.at(v)).stratum].name;
      },
      codims);
}

StratifiedPoset suspension(const StratifiedPoset& l) {
  require_simplicial(l, "suspension");
  auto verts = all_vertices(l);
  const int north = verts.back() + 1, south = verts.back() + 2;
  auto labels = l.vertex_labels();
  labels[north] = "n";
  labels[south] = "s";
  std::vector<std::vector<int>> facets;
  for (const auto& f : l.facets()) {
    auto a = f, b = f;
    a.push_back(north);
    b.push_back(south);
    facets.push_back(std::move(a));
    facets.push_back(std::move(b));
  }
  StratifiedPoset raw = from_simplicial(facets, labels);
  auto lidx = vertex_index(l);
  std::map<std::string, int> codims;
  for (const auto& s : l.strata()) codims[s.name] = s.codim;
  codims["north"] = l.dim() + 1;
  codims["south"] = l.dim() + 1;
  return with_strata(
      raw,
      [&](int c) {
        std::vector<int> v = raw.vertices(c);
        if (v == std::vector<int>{north}) return std::string("north");
        if (v == std::vector<int>{south}) return std::string("south");
        v.erase(std::remove_if(v.begin(), v.end(), [&](int x) { return x == north || x == south; }), v.end());
        return l.strata()[l.cell(lidx.at(v)).stratum].name;
      },
      codims);
}

StratifiedPoset product_space(const StratifiedPoset& a, const StratifiedPoset& b) {
  require_simplicial(a, "product_space");
  require_simplicial(b, "product_space");
  auto va = all_vertices(a), vb = all_vertices(b);
  std::map<int, int> ra, rb;
  for (std::size_t i = 0; i < va.size(); ++i) ra[va[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < vb.size(); ++i) rb[vb[i]] = static_cast<int>(i);
  const int nb = static_cast<int>(vb.size());
  std::map<int, std::string> labels;
  for (int x : va)
    for (int y : vb) labels[ra[x] * nb + rb[y]] = vertex_label(a, x) + "|" + vertex_label(b, y);

  std::set<std::vector<int>> facets;
  for (const auto& fa : a.facets())
    for (const auto& fb : b.facets()) {
      const int p = static_cast<int>(fa.size()) - 1, q = static_cast<int>(fb.size()) - 1;
      std::vector<int> path;
      std::function<void(int, int)> walk = [&](int i, int j) {
        path.push_back(ra[fa[i]] * nb + rb[fb[j]]);
        if (i == p && j == q) {
          auto s = path;
          std::sort(s.begin(), s.end());
          facets.insert(s);
        }
        if (i < p) walk(i + 1, j);
        if (j < q) walk(i, j + 1);
        path.pop_back();
      };
      walk(0, 0);
    }
  StratifiedPoset raw = from_simplicial({facets.begin(), facets.end()}, labels);
  auto ia = vertex_index(a), ib = vertex_index(b);
  std::map<std::string, int> codims;
  for (const auto& sa : a.strata())
    for (const auto& sb : b.strata()) codims[sa.name + "*" + sb.name] = sa.codim + sb.codim;
  return with_strata(
      raw,
      [&](int c) {
        std::set<int> xs, ys;
        for (int v : raw.vertices(c)) {
          xs.insert(va[v / nb]);
          ys.insert(vb[v % nb]);
        }
        int ca = ia.at({xs.begin(), xs.end()});
        int cb = ib.at({ys.begin(), ys.end()});
        return a.strata()[a.cell(ca).stratum].name + "*" + b.strata()[b.cell(cb).stratum].name;
      },
      codims);
}

ProjComplex cellular_resolution(const Selection& base) {
  const auto& p = *base.parent;
  ProjComplex pc;
  pc.base = base;
  std::map<int, int> gen;
  for (int c : base.cells) gen[c] = pc.add(c, -p.cell(c).dim);
  for (int c : base.cells)
    for (int e : p.down_edges(c)) {
      const auto& ed = p.edges()[e];
      if (base.contains(ed.face)) pc.col[gen[c]][gen[ed.face]] = Rational(ed.sign);
    }
  return pc;
}

bool is_cocycle(const StratifiedPoset& base, int degree, const std::map<std::string, Rational>& c) {
  for (const auto& [id, v] : c) {
    if (!base.has(id)) throw InvalidInput("cocycle on unknown cell " + id);
    if (base.cell(base.index(id)).dim != degree) throw InvalidInput("cocycle value on cell " + id + " of the wrong dimension");
  }
  for (int t = 0; t < base.size(); ++t) {
    if (base.cell(t).dim != degree + 1) continue;
    Rational acc;
    for (int e : base.down_edges(t)) {
      auto it = c.find(base.cell(base.edges()[e].face).id);
      if (it != c.end()) acc += it->second * Rational(base.edges()[e].sign);
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

std::map<std::string, Rational> generator_cocycle(const StratifiedPoset& base, int degree) {
  for (int c = 0; c < base.size(); ++c)
    if (base.cell(c).dim == degree) return {{base.cell(c).id, Rational(1)}};
  throw InvalidInput("no cell of dimension " + std::to_string(degree));
}

std::map<std::string, Rational> coboundary_cocycle(const StratifiedPoset& base, int degree,
                                                   const std::map<std::string, Rational>& cochain) {
  std::map<std::string, Rational> out;
  for (int t = 0; t < base.size(); ++t) {
    if (base.cell(t).dim != degree) continue;
    Rational acc;
    for (int e : base.down_edges(t)) {
      auto it = cochain.find(base.cell(base.edges()[e].face).id);
      if (it != cochain.end()) acc += it->second * Rational(base.edges()[e].sign);
    }
    if (!acc.is_zero()) out[base.cell(t).id] = acc;
  }
  return out;
}

ComplexPtr sphere_bundle_pushforward(const BundleModelSpec& spec) {
  if (spec.n < 1) throw InvalidInput("fiber sphere dimension must be positive");
  if (!is_cocycle(*spec.base, spec.n + 1, spec.euler)) throw NotACocycle("Euler cochain is not a cocycle");
  Selection base = full_selection(spec.base);
  ProjComplex pc = cellular_resolution(base);
  ComplexPtr a = shift(pc.to_sheaf(), -(spec.n + 1));
  ComplexPtr q = constant_sheaf(base, 0);
  SheafMorphism e;
  e.source = a;
  e.target = q;
  const auto& p = *spec.base;
  for (int tau : base.cells) {
    auto st = pc.stalk(tau, -(spec.n + 1));
    if (st.empty()) continue;
    RatMatrix m(1, st.size());
    for (std::size_t i = 0; i < st.size(); ++i) {
      auto it = spec.euler.find(p.cell(pc.cell[st[i]]).id);
      if (it != spec.euler.end()) m(0, i) = it->second;
    }
    e.set(0, tau, std::move(m));
  }
  e.validate();
  return cone(e).cone;
}

ComplexPtr torus_bundle_pushforward(const PosetPtr& base, const std::map<std::string, Rational>& e1,
                                    const std::map<std::string, Rational>& e2) {
  ComplexPtr a = sphere_bundle_pushforward({base, 1, e1});
  ComplexPtr b = sphere_bundle_pushforward({base, 1, e2});
  return tensor(a, b);
}

AttachedModel attach_stratum_model(const PosetPtr& x, int codim, const ComplexPtr& model) {
  Selection s = stratum_selection(x, codim);
  if (s.cells.empty()) throw InvalidInput("no stratum of codimension " + std::to_string(codim));
  const auto& mp = *model->base.parent;
  auto first_factor = [](const std::string& id) {
    std::string out, tok;
    std::istringstream in(id);
    while (std::getline(in, tok, ',')) {
      auto bar = tok.find('|');
      if (!out.empty()) out += ",";
      out += bar == std::string::npos ? tok : tok.substr(0, bar);
    }
    return out;
  };
  std::vector<int> to_model(x->size(), -1);
  std::set<int> hit;
  for (int c : s.cells) {
    const std::string& id = x->cell(c).id;
    std::string key = mp.has(id) ? id : first_factor(id);
    if (!mp.has(key)) throw InvalidInput("stratum mismatch: cell " + id + " has no counterpart in the model");
    int m = mp.index(key);
    if (!model->base.contains(m) || !hit.insert(m).second) throw InvalidInput("stratum mismatch at cell " + id);
    to_model[c] = m;
  }
  if (hit.size() != model->base.cells.size()) throw InvalidInput("stratum mismatch: model has extra cells");
  auto model_edge = [&](int face, int coface) {
    for (int e : mp.up_edges(face))
      if (mp.edges()[e].coface == coface) return e;
    throw InvalidInput("stratum mismatch: face relations differ");
  };
  SheafComplex out;
  out.base = s;
  out.lo = model->lo;
  for (int n = model->lo; n <= model->hi(); ++n) {
    CellSheaf f = zero_sheaf(s);
    std::vector<RatMatrix> d(x->size());
    for (int c : s.cells) {
      f.dims[c] = model->dim(n, to_model[c]);
      d[c] = model->diff(n, to_model[c]);
    }
    for (std::size_t e = 0; e < x->edges().size(); ++e) {
      if (!f.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = x->edges()[e];
      f.res[e] = model->res(n, model_edge(to_model[ed.face], to_model[ed.coface]));
    }
    out.terms.push_back(std::move(f));
    out.d.push_back(std::move(d));
  }
  return {x, codim, make_complex(std::move(out))};
}

}  // namespace isc
