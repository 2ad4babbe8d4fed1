#include "isc/obstruction.hpp"

#include <algorithm>

#include "isc/errors.hpp"

namespace isc {

int SpectralPage::entry(int p, int q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? 0 : it->second;
}

int SpectralPage::total() const {
  int t = 0;
  for (const auto& [pq, v] : entries) t += v;
  return t;
}

bool SpectralPage::degenerate() const {
  return std::all_of(differentials.begin(), differentials.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

SpectralSequence::SpectralSequence(const SheafComplex& k) {
  SparseComplex sc = total_complex(k, HyperMethod::Auto);
  // cancelling within a filtration level leaves a model of the E_1 page
  sc.reduce(true);
  auto alive = sc.survivors();
  std::map<int, std::vector<int>> by_degree;
  for (int g : alive) by_degree[sc.degree(g)].push_back(g);
  std::map<int, int> local;
  bool first = true;
  for (auto& [n, gens] : by_degree) {
    std::stable_sort(gens.begin(), gens.end(), [&](int a, int b) { return sc.filtration(a) < sc.filtration(b); });
    for (std::size_t i = 0; i < gens.size(); ++i) {
      local[gens[i]] = static_cast<int>(i);
      int f = sc.filtration(gens[i]);
      filt_[n].push_back(f);
      pmin_ = first ? f : std::min(pmin_, f);
      pmax_ = first ? f : std::max(pmax_, f);
      first = false;
    }
  }
  for (const auto& [n, gens] : by_degree) {
    auto next = by_degree.find(n + 1);
    std::size_t rows = next == by_degree.end() ? 0 : next->second.size();
    RatMatrix d(rows, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (const auto& [to, v] : sc.column(gens[j])) {
        if (!sc.alive(to)) continue;
        if (sc.filtration(to) <= sc.filtration(gens[j]))
          throw InvariantViolation("reduced total complex has a non-increasing differential entry");
        d(local.at(to), j) = v;
      }
    d_[n] = std::move(d);
  }
  bound_ = std::max(2, pmax_ - pmin_ + 1);
  // past the filtration spread every differential is zero
  SpectralPage infinity = page(bound_ + 1);
  for (const auto& [pq, v] : infinity.entries) abutment_[pq.first + pq.second] += v;
  const int total = infinity.total();
  stable_ = 2;
  while (stable_ <= bound_ && page(stable_).total() != total) ++stable_;
}

std::vector<int> SpectralSequence::columns_from(int p, int n) const {
  std::vector<int> out;
  auto it = filt_.find(n);
  if (it == filt_.end()) return out;
  for (std::size_t i = 0; i < it->second.size(); ++i)
    if (it->second[i] >= p) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> SpectralSequence::rows_below(int p, int n) const {
  std::vector<int> out;
  auto it = filt_.find(n);
  if (it == filt_.end()) return out;
  for (std::size_t i = 0; i < it->second.size(); ++i)
    if (it->second[i] < p) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

std::size_t width(const std::map<int, std::vector<int>>& filt, int n) {
  auto it = filt.find(n);
  return it == filt.end() ? 0 : it->second.size();
}

}  // namespace

// {x in F^p C^n : Dx in F^{p+r}} as columns in C^n coordinates
RatMatrix SpectralSequence::z_basis(int r, int p, int n) const {
  const std::size_t dim = width(filt_, n);
  auto cols = columns_from(p, n);
  if (cols.empty()) return RatMatrix(dim, 0);
  auto rows = rows_below(p + r, n + 1);
  RatMatrix kern;
  if (rows.empty()) {
    kern = RatMatrix::identity(cols.size());
  } else {
    const RatMatrix& d = d_.at(n);
    std::vector<std::size_t> rs(rows.begin(), rows.end()), cs(cols.begin(), cols.end());
    kern = kernel_basis(d.select_rows(rs).select_cols(cs));
  }
  RatMatrix out(dim, kern.cols());
  for (std::size_t j = 0; j < kern.cols(); ++j)
    for (std::size_t i = 0; i < cols.size(); ++i) out(cols[i], j) = kern(i, j);
  return out;
}

// D(Z_r^{p-r}) in C^n
RatMatrix SpectralSequence::boundary_basis(int r, int p, int n) const {
  const std::size_t dim = width(filt_, n);
  auto it = d_.find(n - 1);
  if (it == d_.end()) return RatMatrix(dim, 0);
  return it->second * z_basis(r, p - r, n - 1);
}

SpectralSequence::Quotient SpectralSequence::quotient(int r, int p, int n) const {
  RatMatrix z = z_basis(r, p, n);
  RatMatrix den = column_basis(RatMatrix::hcat(z_basis(r - 1, p + 1, n), boundary_basis(r - 1, p, n)));
  RatMatrix both = RatMatrix::hcat(den, z);
  std::vector<std::size_t> reps;
  for (std::size_t c : pivot_columns(both))
    if (c >= den.cols()) reps.push_back(c);
  return {den, both.select_cols(reps)};
}

SpectralPage SpectralSequence::page(int r) const {
  if (r < 1) throw InvalidInput("page index must be at least 1");
  SpectralPage pg;
  pg.r = r;
  std::map<std::pair<int, int>, Quotient> cache;  // (p, n)
  auto get = [&](int p, int n) -> const Quotient& {
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, quotient(r, p, n)).first;
    return it->second;
  };
  for (const auto& [n, f] : filt_) {
    for (int p = pmin_; p <= pmax_; ++p) {
      const Quotient& qt = get(p, n);
      if (qt.reps.cols()) pg.entries[{p, n - p}] = static_cast<int>(qt.reps.cols());
    }
  }
  for (const auto& [pq, dim] : pg.entries) {
    const int p = pq.first, n = pq.first + pq.second;
    if (!filt_.count(n + 1)) continue;
    const Quotient& src = get(p, n);
    const Quotient& dst = get(p + r, n + 1);
    if (!dst.reps.cols()) continue;
    RatMatrix image = d_.at(n) * src.reps;
    auto coeffs = solve(RatMatrix::hcat(dst.denominator, dst.reps), image);
    if (!coeffs) throw InvariantViolation("d_r image escapes Z_r");
    std::vector<std::size_t> tail;
    for (std::size_t i = dst.denominator.cols(); i < coeffs->rows(); ++i) tail.push_back(i);
    pg.differentials[pq] = coeffs->select_rows(tail);
  }
  return pg;
}

std::vector<SpectralPage> ss_pages(const SheafComplex& k, int r_max) {
  if (r_max < 2) throw InvalidInput("r_max must be at least 2");
  SpectralSequence ss(k);
  std::vector<SpectralPage> out;
  for (int r = 2; r <= r_max; ++r) out.push_back(ss.page(r));
  return out;
}

ObstructionReport obstruction_scan(const SheafComplex& k, int qbar) {
  if (qbar < 0) throw InvalidInput("qbar must be nonnegative");
  SpectralSequence ss(k);
  ObstructionReport rep;
  for (int r = 2; r <= ss.stable_page(); ++r) {
    SpectralPage pg = ss.page(r);
    for (const auto& [pq, m] : pg.differentials) {
      const int q = pq.second;
      if (q > qbar && q <= qbar + r - 1 && !m.is_zero())
        rep.witnesses.push_back({r, pq.first, q, static_cast<int>(rank(m))});
    }
    rep.last_page = r;
  }
  rep.verdict = rep.witnesses.empty() ? ScanVerdict::Clear : ScanVerdict::Obstructed;
  return rep;
}

std::string to_string(ScanVerdict v) { return v == ScanVerdict::Clear ? "CLEAR" : "OBSTRUCTED"; }

}  // namespace isc
