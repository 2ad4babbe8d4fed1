#include "isc/functors.hpp"

#include <algorithm>

#include "isc/errors.hpp"

namespace isc {

namespace {

int sgn(int k) { return (k % 2 == 0) ? 1 : -1; }

RatMatrix zeros(int r, int c) { return RatMatrix(static_cast<std::size_t>(r), static_cast<std::size_t>(c)); }

CellSheaf rebase(const CellSheaf& f, const Selection& sel) {
  const auto& p = *sel.parent;
  CellSheaf g = zero_sheaf(sel);
  for (int c : sel.cells) g.dims[c] = f.base.contains(c) ? f.dims[c] : 0;
  for (std::size_t e = 0; e < p.edges().size(); ++e) {
    if (!g.edge_in_base(static_cast<int>(e))) continue;
    const auto& ed = p.edges()[e];
    if (f.edge_in_base(static_cast<int>(e))) g.res[e] = f.res[e];
    else g.res[e] = zeros(g.dims[ed.coface], g.dims[ed.face]);
  }
  return g;
}

ComplexPtr rebase_complex(const SheafComplex& k, const Selection& sel) {
  const auto& p = *sel.parent;
  SheafComplex s;
  s.base = sel;
  s.lo = k.lo;
  for (std::size_t i = 0; i < k.terms.size(); ++i) {
    s.terms.push_back(rebase(k.terms[i], sel));
    std::vector<RatMatrix> d(p.size());
    for (int c = 0; c < p.size(); ++c)
      if (sel.contains(c) && k.base.contains(c)) d[c] = k.d[i][c];
    s.d.push_back(std::move(d));
  }
  return make_complex(std::move(s));
}

}  // namespace

ComplexPtr restrict_to(const ComplexPtr& k, const Selection& sel) {
  if (sel.parent != k->base.parent) throw InvalidInput("restrict: selection on a different poset");
  for (int c : sel.cells)
    if (!k->base.contains(c)) throw InvalidInput("restrict: cell " + sel.parent->cell(c).id + " outside the base");
  return rebase_complex(*k, sel);
}

ComplexPtr extend_by_zero_closed(const ComplexPtr& k, const Selection& into) {
  const auto& p = *into.parent;
  for (int c : k->base.cells) {
    if (!into.contains(c)) throw InvalidInput("extend_by_zero: Z not inside the target");
    for (int e : p.down_edges(c)) {
      int f = p.edges()[e].face;
      if (into.contains(f) && !k->base.contains(f)) throw InvalidInput("extend_by_zero: Z is not closed in the target");
    }
  }
  return rebase_complex(*k, into);
}

SheafMorphism closed_unit(const ComplexPtr& m, const ComplexPtr& ext) {
  SheafMorphism u;
  u.source = m;
  u.target = ext;
  for (int n = m->lo; n <= m->hi(); ++n)
    for (int c : m->base.cells) {
      if (ext->dim(n, c) == 0) continue;
      if (ext->dim(n, c) != m->dim(n, c)) throw InvalidInput("closed_unit: M does not restrict to the extended complex");
      u.set(n, c, RatMatrix::identity(m->dim(n, c)));
    }
  return u;
}

OpenPushforward::OpenPushforward(ComplexPtr k, const Selection& into) : k_(std::move(k)) {
  const auto& p = *into.parent;
  const Selection& u = k_->base;
  if (u.parent != into.parent) throw InvalidInput("pushforward: different posets");
  for (int c : u.cells) {
    if (!into.contains(c)) throw InvalidInput("pushforward: U not inside the target");
    for (int e : p.up_edges(c)) {
      int t = p.edges()[e].coface;
      if (into.contains(t) && !u.contains(t)) throw InvalidInput("pushforward: U is not open in the target");
    }
  }
  for (auto& group : cell_chains(u))
    for (auto& ch : group) chains_.push_back(std::move(ch));
  std::map<std::vector<int>, int> chain_id;
  for (int i = 0; i < static_cast<int>(chains_.size()); ++i) chain_id.emplace(chains_[i], i);

  // global generators: (chain, q, i) in total degree len + q
  struct G {
    int chain, q, i, n;
  };
  std::vector<G> gens;
  std::vector<std::vector<int>> first(chains_.size());  // chain -> first gen per q
  for (int ci = 0; ci < static_cast<int>(chains_.size()); ++ci) {
    const auto& ch = chains_[ci];
    const int len = static_cast<int>(ch.size()) - 1;
    first[ci].assign(k_->terms.size(), -1);
    for (int q = k_->lo; q <= k_->hi(); ++q)
      for (int i = 0; i < k_->dim(q, ch.back()); ++i) {
        if (i == 0) first[ci][q - k_->lo] = static_cast<int>(gens.size());
        gens.push_back({ci, q, i, len + q});
      }
  }
  std::vector<std::map<int, Rational>> col(gens.size());
  for (int ci = 0; ci < static_cast<int>(chains_.size()); ++ci) {
    const auto& ch = chains_[ci];
    const int len = static_cast<int>(ch.size()) - 1;
    const int last = ch.back();
    for (int q = k_->lo; q < k_->hi(); ++q) {
      const RatMatrix& dv = k_->d[q - k_->lo][last];
      for (std::size_t i = 0; i < dv.cols(); ++i)
        for (std::size_t j = 0; j < dv.rows(); ++j)
          if (!dv(j, i).is_zero())
            col[first[ci][q - k_->lo] + i][first[ci][q + 1 - k_->lo] + static_cast<int>(j)] += dv(j, i) * Rational(sgn(len));
    }
    for (std::size_t pos = 0; pos <= ch.size(); ++pos)
      for (int rho : u.cells) {
        if (pos > 0 && !(rho != ch[pos - 1] && p.leq(ch[pos - 1], rho))) continue;
        if (pos < ch.size() && !(rho != ch[pos] && p.leq(rho, ch[pos]))) continue;
        std::vector<int> big = ch;
        big.insert(big.begin() + static_cast<long>(pos), rho);
        int bi = chain_id.at(big);
        for (int q = k_->lo; q <= k_->hi(); ++q) {
          if (!k_->dim(q, last)) continue;
          if (pos < ch.size()) {
            for (int i = 0; i < k_->dim(q, last); ++i)
              col[first[ci][q - k_->lo] + i][first[bi][q - k_->lo] + i] += Rational(sgn(static_cast<int>(pos)));
          } else if (k_->dim(q, rho)) {
            RatMatrix m = k_->terms[q - k_->lo].restriction(last, rho);
            for (std::size_t i = 0; i < m.cols(); ++i)
              for (std::size_t j = 0; j < m.rows(); ++j)
                if (!m(j, i).is_zero())
                  col[first[ci][q - k_->lo] + i][first[bi][q - k_->lo] + static_cast<int>(j)] += m(j, i) * Rational(sgn(len + 1));
          }
        }
      }
  }

  int lo = k_->lo, hi = k_->hi();
  for (const auto& ch : chains_) hi = std::max(hi, k_->hi() + static_cast<int>(ch.size()) - 1);
  std::map<std::pair<int, int>, std::vector<int>> ids;  // (sigma, n) -> global gens
  for (int sigma : into.cells)
    for (int g = 0; g < static_cast<int>(gens.size()); ++g)
      if (p.leq(sigma, chains_[gens[g].chain].front())) ids[{sigma, gens[g].n}].push_back(g);
  for (const auto& [key, v] : ids) {
    auto& b = basis_[key];
    for (int g : v) b.push_back({gens[g].chain, gens[g].q, gens[g].i});
  }

  SheafComplex s;
  s.base = into;
  s.lo = lo;
  if (gens.empty()) {
    out_ = zero_complex(into);
    return;
  }
  auto get = [&](int sigma, int n) -> const std::vector<int>& {
    static const std::vector<int> empty;
    auto it = ids.find({sigma, n});
    return it == ids.end() ? empty : it->second;
  };
  for (int n = lo; n <= hi; ++n) {
    CellSheaf f = zero_sheaf(into);
    std::vector<RatMatrix> d(p.size());
    for (int c = 0; c < p.size(); ++c) {
      const auto& src = get(c, n);
      const auto& dst = get(c, n + 1);
      f.dims[c] = static_cast<int>(src.size());
      RatMatrix m = zeros(n < hi ? static_cast<int>(dst.size()) : 0, f.dims[c]);
      if (n < hi) {
        std::map<int, int> row;
        for (std::size_t j = 0; j < dst.size(); ++j) row[dst[j]] = static_cast<int>(j);
        for (std::size_t i = 0; i < src.size(); ++i)
          for (const auto& [t, v] : col[src[i]]) {
            auto it = row.find(t);
            if (it != row.end()) m(it->second, i) = v;
          }
      }
      d[c] = std::move(m);
    }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!f.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      const auto& src = get(ed.face, n);
      const auto& dst = get(ed.coface, n);
      RatMatrix m = zeros(static_cast<int>(dst.size()), static_cast<int>(src.size()));
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
  out_ = make_complex(std::move(s));
}

const std::vector<OpenPushforward::Gen>& OpenPushforward::stalk_basis(int sigma, int n) const {
  static const std::vector<Gen> empty;
  auto it = basis_.find({sigma, n});
  return it == basis_.end() ? empty : it->second;
}

SheafMorphism OpenPushforward::unit(const ComplexPtr& m, const SheafMorphism& comparison) const {
  const auto& p = *m->base.parent;
  SheafMorphism u;
  u.source = m;
  u.target = out_;
  std::map<int, int> point_chain;
  for (int ci = 0; ci < static_cast<int>(chains_.size()); ++ci)
    if (chains_[ci].size() == 1) point_chain[chains_[ci][0]] = ci;
  for (int q = m->lo; q <= m->hi(); ++q)
    for (int sigma : m->base.cells) {
      if (!m->dim(q, sigma)) continue;
      const auto& basis = stalk_basis(sigma, q);
      RatMatrix comp = zeros(static_cast<int>(basis.size()), m->dim(q, sigma));
      std::vector<int> targets;
      for (int t : p.above(sigma, false))
        if (k_->base.contains(t)) targets.push_back(t);
      auto res = m->terms[q - m->lo].restrictions_from(sigma, targets);
      std::map<std::pair<int, int>, int> row;  // (chain, i) -> row for q-degree gens
      for (std::size_t r = 0; r < basis.size(); ++r)
        if (basis[r].q == q) row[{basis[r].chain, basis[r].i}] = static_cast<int>(r);
      for (int t : targets) {
        RatMatrix v = comparison.at(q, t) * res.at(t);
        int ci = point_chain.at(t);
        for (std::size_t j = 0; j < v.rows(); ++j)
          for (std::size_t i = 0; i < v.cols(); ++i) comp(row.at({ci, static_cast<int>(j)}), i) = v(j, i);
      }
      u.set(q, sigma, std::move(comp));
    }
  return u;
}

RatMatrix OpenPushforward::counit_at(int sigma, int n) const {
  if (!k_->base.contains(sigma)) throw InvalidInput("counit only defined on U");
  const auto& basis = stalk_basis(sigma, n);
  RatMatrix m = zeros(k_->dim(n, sigma), static_cast<int>(basis.size()));
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto& ch = chains_[basis[r].chain];
    if (ch.size() == 1 && ch[0] == sigma && basis[r].q == n) m(basis[r].i, r) = 1;
  }
  return m;
}

OpenPushforward derived_pushforward_open(const ComplexPtr& k, const Selection& into) { return OpenPushforward(k, into); }

int ProjComplex::add(int c, int deg) {
  cell.push_back(c);
  degree.push_back(deg);
  col.emplace_back();
  return static_cast<int>(cell.size()) - 1;
}

std::vector<int> ProjComplex::stalk(int tau, int deg) const {
  std::vector<int> out;
  for (int g = 0; g < static_cast<int>(cell.size()); ++g)
    if (degree[g] == deg && base.parent->leq(cell[g], tau)) out.push_back(g);
  return out;
}

ComplexPtr ProjComplex::to_sheaf() const {
  const auto& p = *base.parent;
  if (cell.empty()) return zero_complex(base);
  int lo = *std::min_element(degree.begin(), degree.end());
  int hi = *std::max_element(degree.begin(), degree.end());
  std::map<std::pair<int, int>, std::vector<int>> st;
  for (int c : base.cells)
    for (int n = lo; n <= hi + 1; ++n) st[{c, n}] = stalk(c, n);
  SheafComplex s;
  s.base = base;
  s.lo = lo;
  for (int n = lo; n <= hi; ++n) {
    CellSheaf f = zero_sheaf(base);
    std::vector<RatMatrix> d(p.size());
    for (int c = 0; c < p.size(); ++c) {
      if (!base.contains(c)) {
        d[c] = RatMatrix();
        continue;
      }
      const auto& src = st[{c, n}];
      const auto& dst = st[{c, n + 1}];
      f.dims[c] = static_cast<int>(src.size());
      RatMatrix m = zeros(n < hi ? static_cast<int>(dst.size()) : 0, f.dims[c]);
      if (n < hi) {
        std::map<int, int> row;
        for (std::size_t j = 0; j < dst.size(); ++j) row[dst[j]] = static_cast<int>(j);
        for (std::size_t i = 0; i < src.size(); ++i)
          for (const auto& [t, v] : col[src[i]]) m(row.at(t), i) = v;
      }
      d[c] = std::move(m);
    }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      if (!f.edge_in_base(static_cast<int>(e))) continue;
      const auto& ed = p.edges()[e];
      const auto& src = st[{ed.face, n}];
      const auto& dst = st[{ed.coface, n}];
      RatMatrix m = zeros(static_cast<int>(dst.size()), static_cast<int>(src.size()));
      std::size_t j = 0;
      for (std::size_t i = 0; i < src.size(); ++i) {
        while (dst[j] != src[i]) ++j;
        m(j, i) = 1;
      }
      f.res[e] = std::move(m);
    }
    s.terms.push_back(std::move(f));
    s.d.push_back(std::move(d));
  }
  return make_complex(std::move(s));
}

ProjectiveResolution projective_resolution(const ComplexPtr& k) {
  ProjectiveResolution r;
  r.proj.base = k->base;
  std::vector<std::vector<int>> chains;
  for (auto& group : cell_chains(k->base))
    for (auto& ch : group) chains.push_back(std::move(ch));
  std::map<std::vector<int>, int> chain_id;
  for (int i = 0; i < static_cast<int>(chains.size()); ++i) chain_id.emplace(chains[i], i);
  std::vector<std::vector<int>> first(chains.size());
  std::vector<int> gen_chain;
  for (int ci = 0; ci < static_cast<int>(chains.size()); ++ci) {
    const auto& ch = chains[ci];
    const int len = static_cast<int>(ch.size()) - 1;
    first[ci].assign(k->terms.size(), -1);
    for (int q = k->lo; q <= k->hi(); ++q)
      for (int i = 0; i < k->dim(q, ch.front()); ++i) {
        int g = r.proj.add(ch.back(), q - len);
        gen_chain.push_back(ci);
        if (i == 0) first[ci][q - k->lo] = g;
      }
  }
  for (int ci = 0; ci < static_cast<int>(chains.size()); ++ci) {
    const auto& ch = chains[ci];
    const int len = static_cast<int>(ch.size()) - 1;
    for (int q = k->lo; q <= k->hi(); ++q) {
      const int dq = k->dim(q, ch.front());
      if (!dq) continue;
      const int base_g = first[ci][q - k->lo];
      if (len >= 1) {
        // drop the first cell: apply the restriction
        std::vector<int> tail(ch.begin() + 1, ch.end());
        int ti = chain_id.at(tail);
        if (k->dim(q, ch[1])) {
          RatMatrix m = k->terms[q - k->lo].restriction(ch[0], ch[1]);
          for (std::size_t i = 0; i < m.cols(); ++i)
            for (std::size_t j = 0; j < m.rows(); ++j)
              if (!m(j, i).is_zero()) r.proj.col[base_g + i][first[ti][q - k->lo] + static_cast<int>(j)] += m(j, i);
        }
        for (int drop = 1; drop <= len; ++drop) {
          std::vector<int> sub = ch;
          sub.erase(sub.begin() + drop);
          int si = chain_id.at(sub);
          for (int i = 0; i < dq; ++i) r.proj.col[base_g + i][first[si][q - k->lo] + i] += Rational(sgn(drop));
        }
      }
      if (q < k->hi()) {
        const RatMatrix& dv = k->d[q - k->lo][ch.front()];
        for (std::size_t i = 0; i < dv.cols(); ++i)
          for (std::size_t j = 0; j < dv.rows(); ++j)
            if (!dv(j, i).is_zero())
              r.proj.col[base_g + i][first[ci][q + 1 - k->lo] + static_cast<int>(j)] += dv(j, i) * Rational(sgn(len));
      }
    }
  }
  for (auto& c : r.proj.col)
    for (auto it = c.begin(); it != c.end();) it = it->second.is_zero() ? c.erase(it) : std::next(it);

  r.complex = r.proj.to_sheaf();
  r.augmentation.source = r.complex;
  r.augmentation.target = k;
  for (int q = k->lo; q <= k->hi(); ++q)
    for (int tau : k->base.cells) {
      auto st = r.proj.stalk(tau, q);
      if (st.empty() || !k->dim(q, tau)) continue;
      RatMatrix m = zeros(k->dim(q, tau), static_cast<int>(st.size()));
      for (std::size_t c = 0; c < st.size(); ++c) {
        int g = st[c];
        const auto& ch = chains[gen_chain[g]];
        if (ch.size() != 1) continue;
        int i = g - first[gen_chain[g]][q - k->lo];
        RatMatrix res = k->terms[q - k->lo].restriction(ch[0], tau);
        for (std::size_t j = 0; j < res.rows(); ++j) m(j, c) = res(j, i);
      }
      r.augmentation.set(q, tau, std::move(m));
    }
  return r;
}

namespace {

// Hom^m(P, B) for P projective: one block B^{deg g + m}(cell g) per generator.
struct ProjHom {
  const ProjComplex& p;
  const SheafComplex& b;
  std::map<int, std::vector<int>> offsets;  // m -> offset per generator (-1 if empty)
  std::map<int, int> sizes;

  int size(int m) {
    if (!sizes.count(m)) {
      std::vector<int> off(p.cell.size(), -1);
      int s = 0;
      for (std::size_t g = 0; g < p.cell.size(); ++g) {
        int dm = b.dim(p.degree[g] + m, p.cell[g]);
        if (dm) {
          off[g] = s;
          s += dm;
        }
      }
      offsets[m] = std::move(off);
      sizes[m] = s;
    }
    return sizes[m];
  }

  RatMatrix differential(int m) {
    const auto& poset = *b.base.parent;
    const int rows = size(m + 1), cols = size(m);
    RatMatrix out = zeros(rows, cols);
    const auto& src = offsets[m];
    const auto& dst = offsets[m + 1];
    for (std::size_t g = 0; g < p.cell.size(); ++g) {
      if (src[g] < 0) continue;
      const int c = p.cell[g], n = p.degree[g] + m;
      // d_B phi_g
      if (dst[g] >= 0) out.add_block(dst[g], src[g], b.diff(n, c));
      (void)poset;
    }
    // -(-1)^m phi o D: the entry g -> g2 of D moves phi_{g2} into slot g
    for (std::size_t g = 0; g < p.cell.size(); ++g) {
      if (dst[g] < 0) continue;
      const int c = p.cell[g];
      for (const auto& [g2, v] : p.col[g]) {
        if (src[g2] < 0) continue;
        const int c2 = p.cell[g2];
        const int n = p.degree[g2] + m;
        RatMatrix res = b.terms[n - b.lo].restriction(c2, c);
        out.add_block(dst[g], src[g2], res.scaled(v * Rational(-sgn(m))));
      }
    }
    return out;
  }
};

}  // namespace

DerivedHomResult derived_hom(const ComplexPtr& a, const ComplexPtr& b, const std::vector<int>& rep_degrees) {
  if (a->base.parent != b->base.parent || a->base.cells != b->base.cells) throw InvalidInput("derived_hom: base mismatch");
  DerivedHomResult out;
  ProjectiveResolution res = projective_resolution(a);
  out.replacement = res.complex;
  if (res.proj.cell.empty() || b->terms.empty()) return out;
  const int pmin = *std::min_element(res.proj.degree.begin(), res.proj.degree.end());
  const int pmax = *std::max_element(res.proj.degree.begin(), res.proj.degree.end());
  ProjHom h{res.proj, *b, {}, {}};
  const int mlo = b->lo - pmax, mhi = b->hi() - pmin;
  std::map<int, RatMatrix> diffs;
  for (int m = mlo - 1; m <= mhi; ++m) diffs[m] = h.differential(m);
  for (int m = mlo; m <= mhi; ++m) {
    bool want = std::find(rep_degrees.begin(), rep_degrees.end(), m) != rep_degrees.end();
    if (!want) {
      int dim = static_cast<int>(cohomology_dim(diffs[m - 1], diffs[m], h.size(m)));
      if (dim) out.graded_dims[m] = dim;
      continue;
    }
    CohomologyData cd = cohomology(diffs[m - 1], diffs[m], h.size(m));
    if (cd.dim) out.graded_dims[m] = static_cast<int>(cd.dim);
    const auto& off = h.offsets[m];
    for (std::size_t k = 0; k < cd.dim; ++k) {
      SheafMorphism f;
      f.source = res.complex;
      f.target = b;
      f.degree = m;
      RatVector v = cd.iota.column(k);
      for (int deg = pmin; deg <= pmax; ++deg)
        for (int tau : a->base.cells) {
          auto st = res.proj.stalk(tau, deg);
          if (st.empty()) continue;
          const int n = deg + m;
          RatMatrix comp = zeros(b->dim(n, tau), static_cast<int>(st.size()));
          for (std::size_t c = 0; c < st.size(); ++c) {
            int g = st[c];
            if (off[g] < 0) continue;
            RatMatrix r = b->terms[n - b->lo].restriction(res.proj.cell[g], tau);
            for (std::size_t j = 0; j < r.rows(); ++j) {
              Rational acc;
              for (std::size_t i = 0; i < r.cols(); ++i)
                if (!r(j, i).is_zero()) acc += r(j, i) * v[off[g] + i];
              comp(j, c) = acc;
            }
          }
          f.set(deg, tau, std::move(comp));
        }
      out.representatives[m].push_back(std::move(f));
    }
  }
  return out;
}

int chain_length(const Selection& sel) {
  const auto& p = *sel.parent;
  std::vector<int> best(p.size(), 0);
  int top = -1;
  for (int c : sel.cells) {
    for (int f : sel.cells) {
      if (f >= c) break;
      if (p.leq(f, c)) best[c] = std::max(best[c], best[f] + 1);
    }
    top = std::max(top, best[c]);
  }
  return top;
}

}  // namespace isc
