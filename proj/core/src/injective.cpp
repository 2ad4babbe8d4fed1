#include "isc/injective.hpp"

#include <algorithm>

#include "isc/errors.hpp"

namespace isc {

namespace {

int sgn(int k) { return (k % 2 == 0) ? 1 : -1; }

RatMatrix zeros(std::size_t r, std::size_t c) { return RatMatrix(r, c); }

}  // namespace

int InjComplex::add(int c, int deg) {
  cell.push_back(c);
  degree.push_back(deg);
  col.emplace_back();
  return size() - 1;
}

void InjComplex::set(int from, int to, const Rational& v) {
  if (v.is_zero()) col[from].erase(to);
  else col[from][to] = v;
}

int InjComplex::lo() const { return empty() ? 0 : *std::min_element(degree.begin(), degree.end()); }
int InjComplex::hi() const { return empty() ? -1 : *std::max_element(degree.begin(), degree.end()); }

std::vector<int> InjComplex::stalk(int tau, int deg) const {
  std::vector<int> out;
  const auto& p = *base.parent;
  for (int g = 0; g < size(); ++g)
    if (degree[g] == deg && p.leq(tau, cell[g])) out.push_back(g);
  return out;
}

RatMatrix InjComplex::block(const std::vector<int>& rows, const std::vector<int>& cols) const {
  RatMatrix m(rows.size(), cols.size());
  if (rows.empty() || cols.empty()) return m;
  std::map<int, std::size_t> pos;
  for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]] = i;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [t, v] : col[cols[j]]) {
      auto it = pos.find(t);
      if (it != pos.end()) m(it->second, j) = v;
    }
  return m;
}

GradedDims InjComplex::stalk_cohomology(int tau) const {
  GradedDims g;
  if (empty()) return g;
  std::map<int, std::vector<int>> st;
  for (int n = lo() - 1; n <= hi() + 1; ++n) st[n] = stalk(tau, n);
  for (int n = lo(); n <= hi(); ++n) {
    if (st[n].empty()) continue;
    int h = static_cast<int>(cohomology_dim(block(st[n], st[n - 1]), block(st[n + 1], st[n]), st[n].size()));
    if (h) g[n] = h;
  }
  return g;
}

SparseComplex InjComplex::sections() const {
  SparseComplex sc;
  for (int g = 0; g < size(); ++g) sc.add_generator(degree[g], 0);
  for (int g = 0; g < size(); ++g)
    for (const auto& [t, v] : col[g]) sc.add_entry(g, t, v);
  return sc;
}

GradedDims InjComplex::hypercohomology() const {
  SparseComplex sc = sections();
  sc.reduce(false);
  return sc.graded_dims();
}

ComplexPtr InjComplex::to_sheaf() const { return sheaf_on(base); }

ComplexPtr InjComplex::sheaf_on(const Selection& sel) const {
  if (sel.parent != base.parent) throw InvalidInput("sheaf_on: selection from another poset");
  const auto& p = *base.parent;
  if (empty()) return zero_complex(sel);
  const int l = lo(), h = hi();
  std::map<std::pair<int, int>, std::vector<int>> st;
  for (int c : sel.cells)
    for (int n = l; n <= h + 1; ++n) st[{c, n}] = stalk(c, n);
  SheafComplex s;
  s.base = sel;
  s.lo = l;
  for (int n = l; n <= h; ++n) {
    CellSheaf f = zero_sheaf(sel);
    std::vector<RatMatrix> d(p.size());
    for (int c : sel.cells) {
      const auto& src = st[{c, n}];
      f.dims[c] = static_cast<int>(src.size());
      d[c] = n < h ? block(st[{c, n + 1}], src) : zeros(0, src.size());
    }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!f.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      const auto& src = st[{ed.face, n}];
      const auto& dst = st[{ed.coface, n}];
      RatMatrix m(dst.size(), src.size());
      std::size_t i = 0;
      for (std::size_t j = 0; j < dst.size(); ++j) {
        while (src[i] != dst[j]) ++i;
        m(j, i) = 1;
      }
      f.res[e] = std::move(m);
    }
    s.terms.push_back(std::move(f));
    s.d.push_back(std::move(d));
  }
  return make_complex(std::move(s));
}

InjComplex InjComplex::restricted(const Selection& open) const {
  if (!open.is_up_closed()) throw InvalidInput("injective restriction needs an open selection");
  InjComplex out;
  out.base = open;
  std::vector<int> remap(size(), -1);
  for (int g = 0; g < size(); ++g)
    if (open.contains(cell[g])) remap[g] = out.add(cell[g], degree[g]);
  for (int g = 0; g < size(); ++g) {
    if (remap[g] < 0) continue;
    for (const auto& [t, v] : col[g])
      if (remap[t] >= 0) out.col[remap[g]][remap[t]] = v;
  }
  return out;
}

void InjComplex::validate() const {
  const auto& p = *base.parent;
  for (int g = 0; g < size(); ++g) {
    if (!base.contains(cell[g])) throw InvariantViolation("injective generator off the base");
    for (const auto& [t, v] : col[g]) {
      if (degree[t] != degree[g] + 1) throw InvariantViolation("injective differential has wrong degree");
      if (!p.leq(cell[t], cell[g])) throw InvariantViolation("injective differential between incomparable cells");
    }
  }
  for (int g = 0; g < size(); ++g) {
    std::map<int, Rational> acc;
    for (const auto& [t, v] : col[g])
      for (const auto& [u, w] : col[t]) acc[u] += v * w;
    for (const auto& [u, v] : acc)
      if (!v.is_zero()) throw InvariantViolation("injective complex has D o D != 0");
  }
}

RatMatrix InjectiveModel::stalk_map(int tau, int n) const {
  std::vector<int> rows = inj.stalk(tau, n);
  const int kd = source->dim(n, tau);
  RatMatrix m(rows.size(), static_cast<std::size_t>(kd));
  if (rows.empty() || kd == 0) return m;
  std::vector<int> cells;
  for (int g : rows) cells.push_back(inj.cell[g]);
  auto res = source->terms[n - source->lo].restrictions_from(tau, cells);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const RatMatrix& rm = res.at(inj.cell[rows[r]]);
    const RatVector& ph = phi[rows[r]];
    for (std::size_t i = 0; i < rm.cols(); ++i) {
      Rational acc;
      for (std::size_t j = 0; j < rm.rows(); ++j)
        if (!ph[j].is_zero() && !rm(j, i).is_zero()) acc += ph[j] * rm(j, i);
      m(r, i) = acc;
    }
  }
  return m;
}

InjectiveModel injective_model(const ComplexPtr& k) {
  InjectiveModel model;
  model.source = k;
  InjComplex& inj = model.inj;
  inj.base = k->base;
  const auto& p = *k->base.parent;
  for (auto it = k->base.cells.rbegin(); it != k->base.cells.rend(); ++it) {
    const int rho = *it;
    // current stalk at rho: generators on cells strictly above rho
    std::map<int, std::vector<int>> s;
    std::vector<int> above_cells;
    for (int g = 0; g < inj.size(); ++g)
      if (p.leq(rho, inj.cell[g])) {
        s[inj.degree[g]].push_back(g);
        above_cells.push_back(inj.cell[g]);
      }
    std::sort(above_cells.begin(), above_cells.end());
    above_cells.erase(std::unique(above_cells.begin(), above_cells.end()), above_cells.end());
    int mlo = k->lo - 1, mhi = k->hi() - 1;
    if (!s.empty()) {
      mlo = std::min(mlo, s.begin()->first);
      mhi = std::max(mhi, s.rbegin()->first);
    }
    bool any = false;
    for (int n = k->lo; n <= k->hi(); ++n) any = any || k->dim(n, rho) > 0;
    if (!any && s.empty()) continue;

    auto sdim = [&](int m) -> std::size_t {
      auto f = s.find(m);
      return f == s.end() ? 0 : f->second.size();
    };
    auto sgens = [&](int m) -> std::vector<int> {
      auto f = s.find(m);
      return f == s.end() ? std::vector<int>{} : f->second;
    };
    std::map<int, std::map<int, RatMatrix>> res;  // degree -> cell -> K(rho -> cell)
    auto psi = [&](int n) {
      // K^n(rho) -> S^n
      auto rows = sgens(n);
      const std::size_t kd = static_cast<std::size_t>(k->dim(n, rho));
      RatMatrix m(rows.size(), kd);
      if (rows.empty() || kd == 0) return m;
      if (!res.count(n)) res[n] = k->terms[n - k->lo].restrictions_from(rho, above_cells);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const RatMatrix& rm = res[n].at(inj.cell[rows[r]]);
        const RatVector& ph = model.phi[rows[r]];
        for (std::size_t i = 0; i < kd; ++i) {
          Rational acc;
          for (std::size_t j = 0; j < rm.rows(); ++j)
            if (!ph[j].is_zero() && !rm(j, i).is_zero()) acc += ph[j] * rm(j, i);
          m(r, i) = acc;
        }
      }
      return m;
    };
    auto cdim = [&](int m) { return static_cast<std::size_t>(k->dim(m + 1, rho)) + sdim(m); };
    auto dc = [&](int m) {
      // C^m -> C^{m+1}, C^m = K^{m+1}(rho) + S^m
      const std::size_t k1 = k->dim(m + 1, rho), k2 = k->dim(m + 2, rho);
      RatMatrix out(cdim(m + 1), cdim(m));
      if (out.rows() == 0 || out.cols() == 0) return out;
      if (k1 && k2) out.set_block(0, 0, k->diff(m + 1, rho).scaled(-1));
      if (k1 && sdim(m + 1)) out.set_block(k2, 0, psi(m + 1));
      if (sdim(m) && sdim(m + 1)) out.set_block(k2, k1, inj.block(sgens(m + 1), sgens(m)));
      return out;
    };
    std::map<int, RatMatrix> dcache;
    auto dget = [&](int m) -> const RatMatrix& {
      auto f = dcache.find(m);
      if (f == dcache.end()) f = dcache.emplace(m, dc(m)).first;
      return f->second;
    };
    for (int m = mlo; m <= mhi; ++m) {
      if (cdim(m) == 0) continue;
      CohomologyData h = cohomology(dget(m - 1), dget(m), cdim(m));
      if (h.dim == 0) continue;
      const std::size_t k1 = k->dim(m + 1, rho);
      const auto sg = sgens(m);
      for (std::size_t j = 0; j < h.dim; ++j) {
        int w = inj.add(rho, m + 1);
        RatVector ph(k1);
        for (std::size_t i = 0; i < k1; ++i) ph[i] = -h.pi(j, i);
        model.phi.push_back(std::move(ph));
        for (std::size_t si = 0; si < sg.size(); ++si) {
          const Rational& v = h.pi(j, k1 + si);
          if (!v.is_zero()) inj.col[sg[si]][w] = -v;
        }
      }
    }
  }
  return model;
}

HomComplex::HomComplex(ComplexPtr a, const InjComplex& i) : a_(std::move(a)), i_(i) {
  if (a_->base.parent != i_.base.parent) throw InvalidInput("Hom complex across different posets");
}

void HomComplex::layout(int m) const {
  if (size_.count(m)) return;
  std::vector<int> off(i_.size(), -1);
  int s = 0;
  for (int t = 0; t < i_.size(); ++t) {
    int w = a_->base.contains(i_.cell[t]) ? a_->dim(i_.degree[t] - m, i_.cell[t]) : 0;
    if (w) {
      off[t] = s;
      s += w;
    }
  }
  off_[m] = std::move(off);
  size_[m] = s;
}

int HomComplex::size(int m) const {
  layout(m);
  return size_.at(m);
}

int HomComplex::offset(int m, int t) const {
  layout(m);
  return off_.at(m)[t];
}

int HomComplex::width(int m, int t) const {
  return a_->base.contains(i_.cell[t]) ? a_->dim(i_.degree[t] - m, i_.cell[t]) : 0;
}

const RatMatrix& HomComplex::res(int n, int from, int to) const {
  auto key = std::make_tuple(n, from, to);
  auto it = res_cache_.find(key);
  if (it == res_cache_.end()) it = res_cache_.emplace(key, a_->terms[n - a_->lo].restriction(from, to)).first;
  return it->second;
}

RatMatrix HomComplex::differential(int m) const {
  RatMatrix out(static_cast<std::size_t>(size(m + 1)), static_cast<std::size_t>(size(m)));
  if (out.rows() == 0 || out.cols() == 0) return out;
  for (int t = 0; t < i_.size(); ++t) {
    const int o = offset(m, t);
    if (o < 0) continue;
    const int rho = i_.cell[t];
    const int n = i_.degree[t] - m;
    for (const auto& [t2, c] : i_.col[t]) {
      const int o2 = offset(m + 1, t2);
      if (o2 < 0) continue;
      const RatMatrix& r = res(n, i_.cell[t2], rho);
      for (std::size_t a = 0; a < r.cols(); ++a)
        for (std::size_t b = 0; b < r.rows(); ++b)
          if (!r(b, a).is_zero()) out(o2 + a, o + b) += c * r(b, a);
    }
    const int o3 = offset(m + 1, t);
    if (o3 >= 0 && a_->dim(n - 1, rho)) {
      RatMatrix d = a_->diff(n - 1, rho);
      const Rational s(-sgn(m));
      for (std::size_t a = 0; a < d.cols(); ++a)
        for (std::size_t b = 0; b < d.rows(); ++b)
          if (!d(b, a).is_zero()) out(o3 + a, o + b) += s * d(b, a);
    }
  }
  return out;
}

RatVector HomComplex::pack(int m, const std::vector<RatVector>& rows) const {
  RatVector v(static_cast<std::size_t>(size(m)));
  for (int t = 0; t < i_.size(); ++t) {
    int o = offset(m, t);
    if (o < 0 || rows[t].empty()) continue;
    for (std::size_t j = 0; j < rows[t].size(); ++j) v[o + j] = rows[t][j];
  }
  return v;
}

std::vector<RatVector> HomComplex::unpack(int m, const RatVector& v) const {
  std::vector<RatVector> rows(i_.size());
  for (int t = 0; t < i_.size(); ++t) {
    int o = offset(m, t);
    if (o < 0) continue;
    rows[t].assign(v.begin() + o, v.begin() + o + width(m, t));
  }
  return rows;
}

RatMatrix HomComplex::precompose(int m, const HomComplex& other, const SheafMorphism& f) const {
  RatMatrix out(static_cast<std::size_t>(other.size(m)), static_cast<std::size_t>(size(m)));
  for (int t = 0; t < i_.size(); ++t) {
    const int o = offset(m, t), o2 = other.offset(m, t);
    if (o < 0 || o2 < 0) continue;
    RatMatrix fm = f.at(i_.degree[t] - m, i_.cell[t]);
    for (std::size_t a = 0; a < fm.rows(); ++a)
      for (std::size_t b = 0; b < fm.cols(); ++b)
        if (!fm(a, b).is_zero()) out(o2 + b, o + a) = fm(a, b);
  }
  return out;
}

RatMatrix HomComplex::stalk_map(int m, const RatVector& v, int tau, int n) const {
  std::vector<int> rows = i_.stalk(tau, n + m);
  const int ad = a_->dim(n, tau);
  RatMatrix out(rows.size(), static_cast<std::size_t>(ad));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int t = rows[r];
    const int o = offset(m, t);
    if (o < 0) continue;
    const RatMatrix& rm = res(n, tau, i_.cell[t]);
    for (std::size_t i = 0; i < rm.cols(); ++i) {
      Rational acc;
      for (std::size_t j = 0; j < rm.rows(); ++j)
        if (!v[o + j].is_zero() && !rm(j, i).is_zero()) acc += v[o + j] * rm(j, i);
      out(r, i) = acc;
    }
  }
  return out;
}

RatVector postcompose(const HomComplex& psi_space, const RatVector& psi, const HomComplex& phi_space, int m,
                      const RatVector& phi, const HomComplex& out_space) {
  const InjComplex& target = psi_space.target();
  const InjComplex& mid = phi_space.target();
  RatVector out(static_cast<std::size_t>(out_space.size(m)));
  for (int t2 = 0; t2 < target.size(); ++t2) {
    const int o_out = out_space.offset(m, t2);
    const int o_psi = psi_space.offset(0, t2);
    if (o_out < 0 || o_psi < 0) continue;
    const int rho = target.cell[t2];
    const int n = target.degree[t2] - m;
    // psi_{t2} runs over mid's stalk at rho in degree deg t2
    std::vector<int> mids = mid.stalk(rho, target.degree[t2]);
    for (std::size_t k = 0; k < mids.size(); ++k) {
      const Rational& c = psi[o_psi + k];
      if (c.is_zero()) continue;
      const int t = mids[k];
      const int o_phi = phi_space.offset(m, t);
      if (o_phi < 0) continue;
      const RatMatrix& r = phi_space.res(n, rho, mid.cell[t]);
      for (std::size_t i = 0; i < r.cols(); ++i) {
        Rational acc;
        for (std::size_t j = 0; j < r.rows(); ++j)
          if (!phi[o_phi + j].is_zero() && !r(j, i).is_zero()) acc += phi[o_phi + j] * r(j, i);
        if (!acc.is_zero()) out[o_out + i] += c * acc;
      }
    }
  }
  return out;
}

}  // namespace isc
