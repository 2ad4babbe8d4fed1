#include "isc/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "isc/errors.hpp"

namespace isc {

namespace {

RatMatrix zeros(int r, int c) { return RatMatrix(static_cast<std::size_t>(r), static_cast<std::size_t>(c)); }

int sign_pow(int k) { return (k % 2 == 0) ? 1 : -1; }

void require_same_base(const Selection& a, const Selection& b, const char* what) {
  if (a.parent != b.parent || a.cells != b.cells) throw InvalidInput(std::string(what) + ": base mismatch");
}

}  // namespace

bool CellSheaf::edge_in_base(int e) const {
  const auto& ed = base.parent->edges()[e];
  return base.contains(ed.face) && base.contains(ed.coface);
}

RatMatrix CellSheaf::restriction(int sigma, int tau) const {
  const auto& p = *base.parent;
  if (!p.leq(sigma, tau)) throw InvalidInput("restriction between incomparable cells");
  RatMatrix m = RatMatrix::identity(dims[sigma]);
  int cur = sigma;
  while (cur != tau) {
    int next = -1;
    for (int e : p.up_edges(cur)) {
      int t = p.edges()[e].coface;
      if (base.contains(t) && p.leq(t, tau)) {
        m = res[e] * m;
        next = t;
        break;
      }
    }
    if (next < 0) throw InvalidInput("no covering chain inside the base between " + p.cell(sigma).id + " and " + p.cell(tau).id);
    cur = next;
  }
  return m;
}

std::map<int, RatMatrix> CellSheaf::restrictions_from(int rho, const std::vector<int>& targets) const {
  const auto& p = *base.parent;
  std::map<int, RatMatrix> all;
  all.emplace(rho, RatMatrix::identity(dims[rho]));
  int need = rho;
  for (int t : targets) need = std::max(need, t);
  for (int t : p.above(rho, true)) {
    if (t > need) break;
    if (!base.contains(t)) continue;
    for (int e : p.down_edges(t)) {
      auto it = all.find(p.edges()[e].face);
      if (it != all.end()) {
        all.emplace(t, res[e] * it->second);
        break;
      }
    }
  }
  std::map<int, RatMatrix> out;
  for (int t : targets) {
    auto it = all.find(t);
    if (it == all.end()) throw InvalidInput("restriction target not reachable inside the base");
    out.emplace(t, it->second);
  }
  return out;
}

void CellSheaf::validate() const {
  const auto& p = *base.parent;
  if (static_cast<int>(dims.size()) != p.size() || res.size() != p.edges().size())
    throw InvariantViolation("sheaf storage does not match its poset");
  for (int c = 0; c < p.size(); ++c)
    if (!base.contains(c) && dims[c] != 0) throw InvariantViolation("nonzero stalk off the base");
  for (std::size_t e = 0; e < res.size(); ++e) {
    if (!edge_in_base(static_cast<int>(e))) continue;
    const auto& ed = p.edges()[e];
    if (res[e].rows() != static_cast<std::size_t>(dims[ed.coface]) || res[e].cols() != static_cast<std::size_t>(dims[ed.face]))
      throw InvariantViolation("restriction map has wrong shape at " + p.cell(ed.face).id + " < " + p.cell(ed.coface).id);
  }
  // two-step compositions agree
  for (int t : base.cells) {
    std::map<int, RatMatrix> seen;
    for (int e1 : p.down_edges(t)) {
      if (!edge_in_base(e1)) continue;
      int mid = p.edges()[e1].face;
      for (int e2 : p.down_edges(mid)) {
        if (!edge_in_base(e2)) continue;
        int s = p.edges()[e2].face;
        RatMatrix m = res[e1] * res[e2];
        auto it = seen.find(s);
        if (it == seen.end()) seen.emplace(s, std::move(m));
        else if (it->second != m)
          throw InvariantViolation("restriction maps not functorial between " + p.cell(s).id + " and " + p.cell(t).id);
      }
    }
  }
}

CellSheaf zero_sheaf(const Selection& base) {
  CellSheaf f;
  f.base = base;
  f.dims.assign(base.parent->size(), 0);
  f.res.assign(base.parent->edges().size(), RatMatrix());
  return f;
}

bool SheafComplex::is_zero() const {
  for (const auto& t : terms)
    for (int c : base.cells)
      if (t.dims[c]) return false;
  return true;
}

RatMatrix SheafComplex::diff(int n, int c) const {
  if (in_range(n)) return d[n - lo][c];
  return zeros(dim(n + 1, c), dim(n, c));
}

RatMatrix SheafComplex::res(int n, int e) const {
  if (in_range(n)) return terms[n - lo].res[e];
  return RatMatrix();
}

int SheafComplex::total_dim(int c) const {
  int s = 0;
  for (const auto& t : terms) s += t.dims[c];
  return s;
}

GradedDims SheafComplex::stalk_cohomology(int c) const {
  GradedDims g;
  for (int n = lo; n <= hi(); ++n) {
    int h = static_cast<int>(cohomology_dim(diff(n - 1, c), diff(n, c), dim(n, c)));
    if (h) g[n] = h;
  }
  return g;
}

void SheafComplex::validate() const {
  const auto& p = *base.parent;
  if (d.size() != terms.size()) throw InvariantViolation("differential count mismatch");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    require_same_base(base, terms[k].base, "complex term");
    terms[k].validate();
  }
  for (int n = lo; n <= hi(); ++n)
    for (int c : base.cells) {
      const RatMatrix& m = d[n - lo][c];
      if (m.rows() != static_cast<std::size_t>(dim(n + 1, c)) || m.cols() != static_cast<std::size_t>(dim(n, c)))
        throw InvariantViolation("differential has wrong shape at " + p.cell(c).id);
      if (n < hi() && m.rows() && m.cols() && !(d[n + 1 - lo][c] * m).is_zero())
        throw InvariantViolation("d o d != 0 at " + p.cell(c).id + " in degree " + std::to_string(n));
    }
  for (int n = lo; n <= hi(); ++n)
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!terms[0].edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      if (dim(n, ed.face) == 0 || dim(n + 1, ed.coface) == 0) continue;
      RatMatrix lhs = res(n + 1, static_cast<int>(e)) * d[n - lo][ed.face];
      RatMatrix rhs = d[n - lo][ed.coface] * res(n, static_cast<int>(e));
      if (lhs != rhs) throw InvariantViolation("differential not natural across " + p.cell(ed.face).id + " < " + p.cell(ed.coface).id);
    }
}

RatMatrix SheafMorphism::at(int n, int c) const {
  auto it = comp.find(n);
  if (it != comp.end()) return it->second[c];
  return zeros(target->dim(n + degree, c), source->dim(n, c));
}

void SheafMorphism::set(int n, int c, RatMatrix m) {
  auto it = comp.find(n);
  if (it == comp.end()) {
    std::vector<RatMatrix> v(source->base.parent->size());
    for (int x = 0; x < source->base.parent->size(); ++x) v[x] = zeros(target->dim(n + degree, x), source->dim(n, x));
    it = comp.emplace(n, std::move(v)).first;
  }
  it->second[c] = std::move(m);
}

void SheafMorphism::validate() const {
  require_same_base(source->base, target->base, "morphism");
  const auto& p = *source->base.parent;
  const int s = sign_pow(degree);
  int lo = std::min(source->lo, target->lo - degree) - 1;
  int hi = std::max(source->hi(), target->hi() - degree) + 1;
  for (int n = lo; n <= hi; ++n) {
    for (int c : source->base.cells) {
      RatMatrix f = at(n, c);
      if (f.rows() != static_cast<std::size_t>(target->dim(n + degree, c)) || f.cols() != static_cast<std::size_t>(source->dim(n, c)))
        throw InvariantViolation("morphism component has wrong shape at " + p.cell(c).id);
      RatMatrix lhs = target->diff(n + degree, c) * f;
      RatMatrix rhs = at(n + 1, c) * source->diff(n, c);
      if (lhs != rhs.scaled(s)) throw InvariantViolation("not a chain map at " + p.cell(c).id + " degree " + std::to_string(n));
    }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      const auto& ed = p.edges()[e];
      if (!source->base.contains(ed.face) || !source->base.contains(ed.coface)) continue;
      if (source->dim(n, ed.face) == 0 || target->dim(n + degree, ed.coface) == 0) continue;
      RatMatrix lhs = target->res(n + degree, static_cast<int>(e)) * at(n, ed.face);
      RatMatrix rhs = at(n, ed.coface) * source->res(n, static_cast<int>(e));
      if (lhs != rhs) throw InvariantViolation("morphism not natural across " + p.cell(ed.face).id + " < " + p.cell(ed.coface).id);
    }
  }
}

bool SheafMorphism::is_zero() const {
  for (const auto& [n, v] : comp)
    for (const auto& m : v)
      if (!m.is_zero()) return false;
  return true;
}

ComplexPtr make_complex(SheafComplex k) { return std::make_shared<const SheafComplex>(std::move(k)); }

ComplexPtr zero_complex(const Selection& base) {
  SheafComplex k;
  k.base = base;
  return make_complex(std::move(k));
}

ComplexPtr sheaf_in_degree(const CellSheaf& f, int degree) {
  SheafComplex k;
  k.base = f.base;
  k.lo = degree;
  k.terms.push_back(f);
  std::vector<RatMatrix> d(f.base.parent->size());
  for (int c = 0; c < f.base.parent->size(); ++c) d[c] = zeros(0, f.dims[c]);
  k.d.push_back(std::move(d));
  return make_complex(std::move(k));
}

ComplexPtr constant_sheaf(const Selection& base, int degree) {
  CellSheaf f = zero_sheaf(base);
  for (int c : base.cells) f.dims[c] = 1;
  for (std::size_t e = 0; e < f.res.size(); ++e)
    if (f.edge_in_base(static_cast<int>(e))) f.res[e] = RatMatrix::identity(1);
  return sheaf_in_degree(f, degree);
}

ComplexPtr shift(const ComplexPtr& k, int by) {
  SheafComplex s = *k;
  s.lo = k->lo - by;
  if (by % 2 != 0)
    for (auto& dv : s.d)
      for (auto& m : dv) m = -m;
  return make_complex(std::move(s));
}

ComplexPtr normalize(const ComplexPtr& k) {
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(k->terms.size()); ++i)
    for (int c : k->base.cells)
      if (k->terms[i].dims[c]) {
        if (first < 0) first = i;
        last = i;
        break;
      }
  if (first < 0) return zero_complex(k->base);
  if (first == 0 && last == static_cast<int>(k->terms.size()) - 1) return k;
  SheafComplex s;
  s.base = k->base;
  s.lo = k->lo + first;
  s.terms.assign(k->terms.begin() + first, k->terms.begin() + last + 1);
  s.d.assign(k->d.begin() + first, k->d.begin() + last + 1);
  return make_complex(std::move(s));
}

ComplexPtr direct_sum(const ComplexPtr& a, const ComplexPtr& b) {
  require_same_base(a->base, b->base, "direct_sum");
  if (a->terms.empty()) return b;
  if (b->terms.empty()) return a;
  const auto& p = *a->base.parent;
  SheafComplex s;
  s.base = a->base;
  s.lo = std::min(a->lo, b->lo);
  int hi = std::max(a->hi(), b->hi());
  for (int n = s.lo; n <= hi; ++n) {
    CellSheaf f = zero_sheaf(s.base);
    std::vector<RatMatrix> d(p.size());
    for (int c = 0; c < p.size(); ++c) {
      f.dims[c] = a->dim(n, c) + b->dim(n, c);
      RatMatrix m = zeros(a->dim(n + 1, c) + b->dim(n + 1, c), f.dims[c]);
      m.set_block(0, 0, a->diff(n, c));
      m.set_block(a->dim(n + 1, c), a->dim(n, c), b->diff(n, c));
      d[c] = std::move(m);
    }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!f.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      RatMatrix m = zeros(f.dims[ed.coface], f.dims[ed.face]);
      if (a->in_range(n)) m.set_block(0, 0, a->res(n, static_cast<int>(e)));
      if (b->in_range(n)) m.set_block(a->dim(n, ed.coface), a->dim(n, ed.face), b->res(n, static_cast<int>(e)));
      f.res[e] = std::move(m);
    }
    s.terms.push_back(std::move(f));
    s.d.push_back(std::move(d));
  }
  return make_complex(std::move(s));
}

ComplexPtr tensor(const ComplexPtr& a, const ComplexPtr& b) {
  require_same_base(a->base, b->base, "tensor");
  if (a->terms.empty() || b->terms.empty()) return zero_complex(a->base);
  const auto& p = *a->base.parent;
  const int lo = a->lo + b->lo, hi = a->hi() + b->hi();
  // offset of block (a-degree x) inside total degree n at cell c
  auto offset = [&](int n, int x, int c) {
    int off = 0;
    for (int y = a->lo; y < x; ++y) off += a->dim(y, c) * b->dim(n - y, c);
    return off;
  };
  auto total = [&](int n, int c) { return offset(n, a->hi() + 1, c); };
  SheafComplex s;
  s.base = a->base;
  s.lo = lo;
  for (int n = lo; n <= hi; ++n) {
    CellSheaf f = zero_sheaf(s.base);
    std::vector<RatMatrix> d(p.size());
    for (int c = 0; c < p.size(); ++c) {
      f.dims[c] = s.base.contains(c) ? total(n, c) : 0;
      RatMatrix m = zeros(s.base.contains(c) ? total(n + 1, c) : 0, f.dims[c]);
      if (s.base.contains(c)) {
        for (int x = a->lo; x <= a->hi(); ++x) {
          int y = n - x;
          if (!b->in_range(y)) continue;
          int da = a->dim(x, c), db = b->dim(y, c);
          if (da * db == 0) continue;
          int col = offset(n, x, c);
          if (a->dim(x + 1, c))
            m.set_block(offset(n + 1, x + 1, c), col, RatMatrix::kron(a->diff(x, c), RatMatrix::identity(db)));
          if (b->dim(y + 1, c))
            m.set_block(offset(n + 1, x, c), col,
                        RatMatrix::kron(RatMatrix::identity(da), b->diff(y, c)).scaled(sign_pow(x)));
        }
      }
      d[c] = std::move(m);
    }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!f.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      RatMatrix m = zeros(f.dims[ed.coface], f.dims[ed.face]);
      for (int x = a->lo; x <= a->hi(); ++x) {
        int y = n - x;
        if (!b->in_range(y) || a->dim(x, ed.face) * b->dim(y, ed.face) == 0) continue;
        m.set_block(offset(n, x, ed.coface), offset(n, x, ed.face),
                    RatMatrix::kron(a->res(x, static_cast<int>(e)), b->res(y, static_cast<int>(e))));
      }
      f.res[e] = std::move(m);
    }
    s.terms.push_back(std::move(f));
    s.d.push_back(std::move(d));
  }
  return make_complex(std::move(s));
}

SheafMorphism identity_morphism(const ComplexPtr& k) {
  SheafMorphism f;
  f.source = f.target = k;
  for (int n = k->lo; n <= k->hi(); ++n)
    for (int c : k->base.cells) f.set(n, c, RatMatrix::identity(k->dim(n, c)));
  return f;
}

SheafMorphism zero_morphism(const ComplexPtr& a, const ComplexPtr& b) {
  SheafMorphism f;
  f.source = a;
  f.target = b;
  return f;
}

SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f) {
  SheafMorphism h;
  h.source = f.source;
  h.target = g.target;
  h.degree = f.degree + g.degree;
  for (const auto& [n, v] : f.comp) {
    if (!g.comp.count(n + f.degree)) continue;
    for (int c : f.source->base.cells) h.set(n, c, g.at(n + f.degree, c) * v[c]);
  }
  return h;
}

SheafMorphism add(const SheafMorphism& f, const SheafMorphism& g) {
  SheafMorphism h = f;
  for (const auto& [n, v] : g.comp)
    for (int c : f.source->base.cells) h.set(n, c, h.at(n, c) + v[c]);
  return h;
}

SheafMorphism scale(const SheafMorphism& f, const Rational& s) {
  SheafMorphism h = f;
  for (auto& [n, v] : h.comp)
    for (auto& m : v) m = m.scaled(s);
  return h;
}

CellSheaf cohomology_sheaf(const SheafComplex& k, int i) {
  const auto& p = *k.base.parent;
  CellSheaf f = zero_sheaf(k.base);
  std::vector<CohomologyData> h(p.size());
  for (int c : k.base.cells) {
    h[c] = cohomology(k.diff(i - 1, c), k.diff(i, c), k.dim(i, c));
    f.dims[c] = static_cast<int>(h[c].dim);
  }
  for (std::size_t e = 0; e < p.edges().size(); ++e) {
    if (!f.edge_in_base(static_cast<int>(e))) continue;
    const auto& ed = p.edges()[e];
    if (f.dims[ed.face] == 0 || f.dims[ed.coface] == 0) {
      f.res[e] = zeros(f.dims[ed.coface], f.dims[ed.face]);
      continue;
    }
    f.res[e] = h[ed.coface].pi * k.res(i, static_cast<int>(e)) * h[ed.face].iota;
  }
  return f;
}

RatMatrix induced_on_cohomology(const SheafMorphism& f, int i, int c) {
  const auto& a = *f.source;
  const auto& b = *f.target;
  CohomologyData ha = cohomology(a.diff(i - 1, c), a.diff(i, c), a.dim(i, c));
  CohomologyData hb = cohomology(b.diff(i + f.degree - 1, c), b.diff(i + f.degree, c), b.dim(i + f.degree, c));
  if (ha.dim == 0 || hb.dim == 0) return zeros(static_cast<int>(hb.dim), static_cast<int>(ha.dim));
  return hb.pi * f.at(i, c) * ha.iota;
}

bool is_quasi_isomorphism(const SheafMorphism& f) {
  int lo = std::min(f.source->lo, f.target->lo);
  int hi = std::max(f.source->hi(), f.target->hi());
  for (int c : f.source->base.cells)
    for (int i = lo; i <= hi; ++i) {
      RatMatrix m = induced_on_cohomology(f, i, c);
      if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    }
  return true;
}

Truncation truncate(const ComplexPtr& k, int n, Side side) {
  const auto& p = *k->base.parent;
  Truncation t;
  if (side == Side::Le) {
    if (k->terms.empty() || n >= k->hi()) {
      t.complex = k;
      t.map = identity_morphism(k);
      return t;
    }
    if (n < k->lo) {
      t.complex = zero_complex(k->base);
      t.map = zero_morphism(t.complex, k);
      return t;
    }
    SheafComplex s;
    s.base = k->base;
    s.lo = k->lo;
    s.terms.assign(k->terms.begin(), k->terms.begin() + (n - k->lo));
    s.d.assign(k->d.begin(), k->d.begin() + (n - k->lo));
    std::vector<RatMatrix> z(p.size());
    CellSheaf top = zero_sheaf(k->base);
    for (int c : k->base.cells) {
      z[c] = kernel_basis(k->diff(n, c).rows() ? k->diff(n, c) : zeros(0, k->dim(n, c)));
      top.dims[c] = static_cast<int>(z[c].cols());
    }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!top.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      auto r = solve(z[ed.coface], k->res(n, static_cast<int>(e)) * z[ed.face]);
      if (!r) throw InvariantViolation("restriction does not preserve cocycles");
      top.res[e] = *r;
    }
    if (n > k->lo) {
      auto& prev = s.d.back();
      for (int c : k->base.cells) {
        auto r = solve(z[c], k->diff(n - 1, c));
        if (!r) throw InvariantViolation("coboundaries are not cocycles");
        prev[c] = *r;
      }
    }
    std::vector<RatMatrix> dtop(p.size());
    for (int c = 0; c < p.size(); ++c) dtop[c] = zeros(0, top.dims[c]);
    s.terms.push_back(std::move(top));
    s.d.push_back(std::move(dtop));
    t.complex = make_complex(std::move(s));
    t.map.source = t.complex;
    t.map.target = k;
    for (int m = k->lo; m < n; ++m)
      for (int c : k->base.cells) t.map.set(m, c, RatMatrix::identity(k->dim(m, c)));
    for (int c : k->base.cells) t.map.set(n, c, z[c]);
    return t;
  }
  // Gt
  if (k->terms.empty() || n < k->lo) {
    t.complex = k;
    t.map = identity_morphism(k);
    return t;
  }
  if (n >= k->hi()) {
    t.complex = zero_complex(k->base);
    t.map = zero_morphism(k, t.complex);
    return t;
  }
  SheafComplex s;
  s.base = k->base;
  s.lo = n;
  std::vector<RatMatrix> img(p.size()), proj(p.size());
  CellSheaf bottom = zero_sheaf(k->base);
  for (int c : k->base.cells) {
    RatMatrix dn = k->diff(n, c);
    img[c] = column_basis(dn);
    if (img[c].cols() == 0) img[c] = zeros(k->dim(n + 1, c), 0);
    auto pr = solve(img[c], dn);
    if (!pr) throw InvariantViolation("image basis does not span the image");
    proj[c] = *pr;
    bottom.dims[c] = static_cast<int>(img[c].cols());
  }
  for (std::size_t e = 0; e < p.edges().size(); ++e) {
    if (!bottom.edge_in_base(static_cast<int>(e))) continue;
    const auto& ed = p.edges()[e];
    auto r = solve(img[ed.coface], k->res(n + 1, static_cast<int>(e)) * img[ed.face]);
    if (!r) throw InvariantViolation("restriction does not preserve images");
    bottom.res[e] = *r;
  }
  s.terms.push_back(std::move(bottom));
  s.d.push_back(img);
  s.terms.insert(s.terms.end(), k->terms.begin() + (n + 1 - k->lo), k->terms.end());
  s.d.insert(s.d.end(), k->d.begin() + (n + 1 - k->lo), k->d.end());
  t.complex = make_complex(std::move(s));
  t.map.source = k;
  t.map.target = t.complex;
  for (int c : k->base.cells) t.map.set(n, c, proj[c]);
  for (int m = n + 1; m <= k->hi(); ++m)
    for (int c : k->base.cells) t.map.set(m, c, RatMatrix::identity(k->dim(m, c)));
  return t;
}

ConeResult cone(const SheafMorphism& f) {
  if (f.degree != 0) throw InvalidInput("cone of a morphism of nonzero degree");
  require_same_base(f.source->base, f.target->base, "cone");
  const auto& a = *f.source;
  const auto& b = *f.target;
  const auto& p = *a.base.parent;
  ConeResult r;
  if (a.terms.empty() && b.terms.empty()) {
    r.cone = zero_complex(a.base);
    r.from_target = zero_morphism(f.target, r.cone);
    r.to_shift = zero_morphism(r.cone, shift(f.source, 1));
    return r;
  }
  int lo = a.terms.empty() ? b.lo : (b.terms.empty() ? a.lo - 1 : std::min(a.lo - 1, b.lo));
  int hi = a.terms.empty() ? b.hi() : (b.terms.empty() ? a.hi() - 1 : std::max(a.hi() - 1, b.hi()));
  SheafComplex s;
  s.base = a.base;
  s.lo = lo;
  for (int m = lo; m <= hi; ++m) {
    CellSheaf t = zero_sheaf(a.base);
    std::vector<RatMatrix> d(p.size());
    for (int c = 0; c < p.size(); ++c) {
      int da = a.dim(m + 1, c), db = b.dim(m, c);
      int na = a.dim(m + 2, c), nb = b.dim(m + 1, c);
      t.dims[c] = da + db;
      RatMatrix dm = zeros(na + nb, da + db);
      if (a.base.contains(c)) {
        dm.set_block(0, 0, a.diff(m + 1, c).scaled(-1));
        dm.set_block(na, 0, f.at(m + 1, c));
        dm.set_block(na, da, b.diff(m, c));
      }
      d[c] = std::move(dm);
    }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!t.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      RatMatrix rm = zeros(t.dims[ed.coface], t.dims[ed.face]);
      if (a.in_range(m + 1)) rm.set_block(0, 0, a.res(m + 1, static_cast<int>(e)));
      if (b.in_range(m)) rm.set_block(a.dim(m + 1, ed.coface), a.dim(m + 1, ed.face), b.res(m, static_cast<int>(e)));
      t.res[e] = std::move(rm);
    }
    s.terms.push_back(std::move(t));
    s.d.push_back(std::move(d));
  }
  r.cone = make_complex(std::move(s));
  ComplexPtr a1 = shift(f.source, 1);
  r.from_target.source = f.target;
  r.from_target.target = r.cone;
  r.to_shift.source = r.cone;
  r.to_shift.target = a1;
  for (int m = lo; m <= hi; ++m)
    for (int c : a.base.cells) {
      int da = a.dim(m + 1, c), db = b.dim(m, c);
      RatMatrix in = zeros(da + db, db);
      in.set_block(da, 0, RatMatrix::identity(db));
      if (b.in_range(m)) r.from_target.set(m, c, std::move(in));
      RatMatrix out = zeros(da, da + db);
      out.set_block(0, 0, RatMatrix::identity(da));
      r.to_shift.set(m, c, std::move(out));
    }
  return r;
}

std::vector<std::vector<std::vector<int>>> cell_chains(const Selection& sel) {
  const auto& p = *sel.parent;
  std::vector<std::vector<int>> greater(p.size());
  for (int c : sel.cells)
    for (int t : p.above(c, true))
      if (sel.contains(t)) greater[c].push_back(t);
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> chain;
  std::function<void()> rec = [&]() {
    std::size_t k = chain.size() - 1;
    if (out.size() <= k) out.resize(k + 1);
    out[k].push_back(chain);
    for (int t : greater[chain.back()]) {
      chain.push_back(t);
      rec();
      chain.pop_back();
    }
  };
  for (int c : sel.cells) {
    chain = {c};
    rec();
  }
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

SparseComplex total_complex(const SheafComplex& k, HyperMethod method) {
  const auto& p = *k.base.parent;
  if (method == HyperMethod::Auto) method = k.base.is_down_closed() ? HyperMethod::Cellular : HyperMethod::ChainOfCells;
  SparseComplex sc;
  if (k.terms.empty()) return sc;
  if (method == HyperMethod::Cellular) {
    if (!k.base.is_down_closed()) throw InvalidInput("cellular hypercohomology needs a closed base");
    // gen[c][q-lo] = first generator id
    std::vector<std::vector<int>> gen(p.size(), std::vector<int>(k.terms.size(), -1));
    for (int c : k.base.cells)
      for (int q = k.lo; q <= k.hi(); ++q) {
        int pdeg = p.cell(c).dim;
        for (int i = 0; i < k.dim(q, c); ++i) {
          int g = sc.add_generator(pdeg + q, pdeg);
          if (i == 0) gen[c][q - k.lo] = g;
        }
      }
    for (int c : k.base.cells) {
      int pdeg = p.cell(c).dim;
      for (int q = k.lo; q <= k.hi(); ++q) {
        int dq = k.dim(q, c);
        if (!dq) continue;
        const RatMatrix& dv = k.d[q - k.lo][c];
        for (int i = 0; i < dq; ++i) {
          int src = gen[c][q - k.lo] + i;
          if (q < k.hi())
            for (std::size_t j = 0; j < dv.rows(); ++j)
              if (!dv(j, i).is_zero()) sc.add_entry(src, gen[c][q + 1 - k.lo] + static_cast<int>(j), dv(j, i) * Rational(sign_pow(pdeg)));
          for (int e : p.up_edges(c)) {
            const auto& ed = p.edges()[e];
            if (!k.base.contains(ed.coface) || !k.dim(q, ed.coface)) continue;
            const RatMatrix& r = k.terms[q - k.lo].res[e];
            for (std::size_t j = 0; j < r.rows(); ++j)
              if (!r(j, i).is_zero()) sc.add_entry(src, gen[ed.coface][q - k.lo] + static_cast<int>(j), r(j, i) * Rational(ed.sign));
          }
        }
      }
    }
    return sc;
  }
  auto chains = cell_chains(k.base);
  std::map<std::vector<int>, std::vector<int>> gen;  // chain -> first generator per q
  for (std::size_t len = 0; len < chains.size(); ++len)
    for (const auto& ch : chains[len]) {
      std::vector<int> g(k.terms.size(), -1);
      for (int q = k.lo; q <= k.hi(); ++q)
        for (int i = 0; i < k.dim(q, ch.back()); ++i) {
          int id = sc.add_generator(static_cast<int>(len) + q, static_cast<int>(len));
          if (i == 0) g[q - k.lo] = id;
        }
      gen.emplace(ch, std::move(g));
    }
  for (std::size_t len = 0; len < chains.size(); ++len) {
    const int pk = static_cast<int>(len);
    for (const auto& ch : chains[len]) {
      const int last = ch.back();
      const auto& g = gen.at(ch);
      // vertical part
      for (int q = k.lo; q < k.hi(); ++q) {
        const RatMatrix& dv = k.d[q - k.lo][last];
        for (std::size_t i = 0; i < dv.cols(); ++i)
          for (std::size_t j = 0; j < dv.rows(); ++j)
            if (!dv(j, i).is_zero())
              sc.add_entry(g[q - k.lo] + static_cast<int>(i), g[q + 1 - k.lo] + static_cast<int>(j), dv(j, i) * Rational(sign_pow(pk)));
      }
      // horizontal part: insert a cell at position pos
      for (std::size_t pos = 0; pos <= ch.size(); ++pos) {
        for (int rho : k.base.cells) {
          if (pos > 0 && !(p.leq(ch[pos - 1], rho) && rho != ch[pos - 1])) continue;
          if (pos < ch.size() && !(p.leq(rho, ch[pos]) && rho != ch[pos])) continue;
          std::vector<int> big = ch;
          big.insert(big.begin() + static_cast<long>(pos), rho);
          const auto& gb = gen.at(big);
          if (pos < ch.size()) {
            Rational s(sign_pow(static_cast<int>(pos)));
            for (int q = k.lo; q <= k.hi(); ++q)
              for (int i = 0; i < k.dim(q, last); ++i) sc.add_entry(g[q - k.lo] + i, gb[q - k.lo] + i, s);
          } else {
            Rational s(sign_pow(pk + 1));
            for (int q = k.lo; q <= k.hi(); ++q) {
              if (!k.dim(q, last) || !k.dim(q, rho)) continue;
              RatMatrix m = k.terms[q - k.lo].restriction(last, rho);
              for (std::size_t i = 0; i < m.cols(); ++i)
                for (std::size_t j = 0; j < m.rows(); ++j)
                  if (!m(j, i).is_zero())
                    sc.add_entry(g[q - k.lo] + static_cast<int>(i), gb[q - k.lo] + static_cast<int>(j), m(j, i) * s);
            }
          }
        }
      }
    }
  }
  return sc;
}

GradedDims hypercohomology(const SheafComplex& k, HyperMethod method) {
  SparseComplex sc = total_complex(k, method);
  sc.reduce(false);
  for (int g : sc.survivors())
    if (!sc.column(g).empty()) throw InvariantViolation("reduction left a nonzero differential");
  GradedDims out = sc.graded_dims();
  return out;
}

ConstancyReport is_constant_rank_one(const CellSheaf& f, const Selection& within) {
  const auto& p = *f.base.parent;
  ConstancyReport r;
  for (int c : within.cells) {
    if (!f.base.contains(c)) {
      r.reason = "cell " + p.cell(c).id + " outside the sheaf's base";
      return r;
    }
    if (f.dims[c] != 1) {
      r.reason = "stalk at " + p.cell(c).id + " has rank " + std::to_string(f.dims[c]);
      r.constant = false;
    }
  }
  if (!r.reason.empty()) return r;
  for (std::size_t e = 0; e < p.edges().size(); ++e) {
    const auto& ed = p.edges()[e];
    if (!within.contains(ed.face) || !within.contains(ed.coface)) continue;
    if (f.res[e](0, 0).is_zero()) {
      r.reason = "restriction " + p.cell(ed.face).id + " < " + p.cell(ed.coface).id + " is zero";
      return r;
    }
  }
  // propagate a section along covering pairs; inconsistency means monodromy
  std::vector<Rational> val(p.size());
  std::vector<char> seen(p.size(), 0);
  for (int root : within.cells) {
    if (seen[root]) continue;
    ++r.components;
    bool ok = true;
    std::queue<int> q;
    q.push(root);
    seen[root] = 1;
    val[root] = 1;
    while (!q.empty()) {
      int c = q.front();
      q.pop();
      auto visit = [&](int other, const Rational& expected) {
        if (!seen[other]) {
          seen[other] = 1;
          val[other] = expected;
          q.push(other);
        } else if (val[other] != expected) {
          ok = false;
        }
      };
      for (int e : p.up_edges(c)) {
        int t = p.edges()[e].coface;
        if (within.contains(t)) visit(t, f.res[e](0, 0) * val[c]);
      }
      for (int e : p.down_edges(c)) {
        int s = p.edges()[e].face;
        if (within.contains(s)) visit(s, val[c] / f.res[e](0, 0));
      }
    }
    if (ok) ++r.sections;
  }
  r.constant = r.sections == r.components && r.components > 0;
  if (!r.constant) r.reason = r.components == 0 ? "empty selection" : "nontrivial monodromy";
  return r;
}

int euler_characteristic(const GradedDims& g) {
  int chi = 0;
  for (const auto& [n, v] : g) chi += sign_pow(n) * v;
  return chi;
}

}  // namespace isc
