#include "isc/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace isc {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& row : rows) {
    if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
    for (long long v : row) a_.emplace_back(v);
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& cols, std::size_t rows) {
  RatMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (!(*this)(i, j).is_zero()) t(j, i) = (*this)(i, j);
  return t;
}

RatVector RatMatrix::column(std::size_t j) const {
  RatVector v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

RatVector RatMatrix::row(std::size_t i) const { return RatVector(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

void RatMatrix::set_column(std::size_t j, const RatVector& v) {
  if (v.size() != r_) throw std::invalid_argument("column length mismatch");
  for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

RatMatrix RatMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  RatMatrix m(idx.size(), c_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

RatMatrix RatMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  RatMatrix m(r_, idx.size());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

RatMatrix RatMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  RatMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void RatMatrix::set_block(std::size_t r0, std::size_t c0, const RatMatrix& b) {
  if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw std::out_of_range("set_block");
  for (std::size_t i = 0; i < b.r_; ++i)
    for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void RatMatrix::add_block(std::size_t r0, std::size_t c0, const RatMatrix& b) {
  if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw std::out_of_range("add_block");
  for (std::size_t i = 0; i < b.r_; ++i)
    for (std::size_t j = 0; j < b.c_; ++j)
      if (!b(i, j).is_zero()) (*this)(r0 + i, c0 + j) += b(i, j);
}

RatMatrix RatMatrix::hcat(const RatMatrix& a, const RatMatrix& b) {
  if (a.r_ != b.r_) throw std::invalid_argument("hcat row mismatch");
  RatMatrix m(a.r_, a.c_ + b.c_);
  m.set_block(0, 0, a);
  m.set_block(0, a.c_, b);
  return m;
}

RatMatrix RatMatrix::vcat(const RatMatrix& a, const RatMatrix& b) {
  if (a.c_ != b.c_) throw std::invalid_argument("vcat column mismatch");
  RatMatrix m(a.r_ + b.r_, a.c_);
  m.set_block(0, 0, a);
  m.set_block(a.r_, 0, b);
  return m;
}

RatMatrix RatMatrix::kron(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m(a.r_ * b.r_, a.c_ * b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t j = 0; j < a.c_; ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.r_; ++k)
        for (std::size_t l = 0; l < b.c_; ++l)
          if (!b(k, l).is_zero()) m(i * b.r_ + k, j * b.c_ + l) = a(i, j) * b(k, l);
    }
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& b) const {
  if (c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
  RatMatrix m(r_, b.c_);
  std::vector<std::vector<std::size_t>> nz(b.r_);
  for (std::size_t k = 0; k < b.r_; ++k)
    for (std::size_t j = 0; j < b.c_; ++j)
      if (!b(k, j).is_zero()) nz[k].push_back(j);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Rational& x = (*this)(i, k);
      if (x.is_zero()) continue;
      Rational nx = -x;
      for (std::size_t j : nz[k]) Rational::submul(m(i, j), nx, b(k, j));
    }
  return m;
}

RatVector RatMatrix::operator*(const RatVector& v) const {
  if (c_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  RatVector out(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Rational& x = (*this)(i, k);
      if (!x.is_zero() && !v[k].is_zero()) out[i] += x * v[k];
    }
  return out;
}

RatMatrix RatMatrix::operator+(const RatMatrix& b) const {
  if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("matrix sum shape mismatch");
  RatMatrix m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!b.a_[k].is_zero()) m.a_[k] += b.a_[k];
  return m;
}

RatMatrix RatMatrix::operator-(const RatMatrix& b) const {
  if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("matrix difference shape mismatch");
  RatMatrix m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!b.a_[k].is_zero()) m.a_[k] -= b.a_[k];
  return m;
}

RatMatrix RatMatrix::scaled(const Rational& s) const {
  RatMatrix m(r_, c_);
  if (s.is_zero()) return m;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!a_[k].is_zero()) m.a_[k] = a_[k] * s;
  return m;
}

Echelon rref(RatMatrix m) {
  Echelon e;
  const std::size_t R = m.rows(), C = m.cols();
  std::size_t row = 0;
  std::vector<std::size_t> nzcols;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t p = row;
    while (p < R && m(p, col).is_zero()) ++p;
    if (p == R) continue;
    if (p != row)
      for (std::size_t j = col; j < C; ++j) std::swap(m(p, j), m(row, j));
    Rational inv = m(row, col).inverse();
    nzcols.clear();
    for (std::size_t j = col; j < C; ++j) {
      if (m(row, j).is_zero()) continue;
      if (!inv.is_one()) m(row, j) *= inv;
      nzcols.push_back(j);
    }
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Rational f = m(i, col);
      for (std::size_t j : nzcols) Rational::submul(m(i, j), f, m(row, j));
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.r = std::move(m);
  return e;
}

std::size_t rank(const RatMatrix& m) {
  if (m.empty()) return 0;
  // eliminate along the shorter side
  if (m.rows() > m.cols()) return rref(m.transpose()).pivots.size();
  return rref(m).pivots.size();
}

namespace {

RatMatrix kernel_from_echelon(const Echelon& e, std::size_t cols) {
  std::vector<char> is_pivot(cols, 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) free.push_back(j);
  RatMatrix k(cols, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      if (!e.r(i, free[f]).is_zero()) k(e.pivots[i], f) = -e.r(i, free[f]);
  }
  return k;
}

}  // namespace

RatMatrix kernel_basis(const RatMatrix& m) {
  if (m.rows() == 0) return RatMatrix::identity(m.cols());
  Echelon e = rref(m);
  RatMatrix k = kernel_from_echelon(e, m.cols());
  if (e.pivots.size() + k.cols() != m.cols()) throw std::logic_error("rank-nullity violated");
  return k;
}

AffineSolution solve_affine(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_affine: dimension mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, m.cols()) = b[i];
  Echelon e = rref(aug);
  AffineSolution s;
  std::vector<std::size_t> mp;
  bool consistent = true;
  for (auto p : e.pivots) {
    if (p == m.cols()) consistent = false;
    else mp.push_back(p);
  }
  Echelon em{e.r.block(0, 0, e.r.rows(), m.cols()), mp};
  s.kernel = kernel_from_echelon(em, m.cols());
  if (consistent) {
    RatVector x(m.cols());
    for (std::size_t i = 0; i < mp.size(); ++i) x[mp[i]] = e.r(i, m.cols());
    s.particular = std::move(x);
  }
  return s;
}

std::optional<RatMatrix> solve(const RatMatrix& m, const RatMatrix& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  RatMatrix x(m.cols(), b.cols());
  if (b.cols() == 0) return x;
  if (m.rows() == 0) return x;
  Echelon e = rref(RatMatrix::hcat(m, b));
  std::size_t r = 0;
  for (auto p : e.pivots) {
    if (p >= m.cols()) return std::nullopt;
    ++r;
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.r(i, m.cols() + j);
  return x;
}

std::vector<std::size_t> pivot_columns(const RatMatrix& m) {
  if (m.empty()) return {};
  return rref(m).pivots;
}

RatMatrix column_basis(const RatMatrix& m) { return m.select_cols(pivot_columns(m)); }

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  auto x = solve(m, RatMatrix::identity(m.rows()));
  if (!x || rank(m) != m.rows()) throw std::domain_error("singular matrix");
  return *x;
}

CohomologyData cohomology(const RatMatrix& d_in, const RatMatrix& d_out, std::size_t n) {
  CohomologyData h;
  RatMatrix bnd = d_in.cols() ? column_basis(d_in) : RatMatrix(n, 0);
  RatMatrix z = kernel_basis(d_out.rows() ? d_out : RatMatrix(0, n));
  RatMatrix bz = RatMatrix::hcat(bnd, z);
  std::vector<std::size_t> piv = pivot_columns(bz);
  std::vector<std::size_t> reps;
  for (auto p : piv)
    if (p >= bnd.cols()) reps.push_back(p - bnd.cols());
  h.dim = reps.size();
  h.iota = z.select_cols(reps);
  if (h.dim == 0) {
    h.pi = RatMatrix(0, n);
    return h;
  }
  // complete [boundaries | reps] to a basis with unit vectors, then read off
  // the rep coordinates: pi^T solves M^T pi^T = [0 | I | 0]^T
  RatMatrix partial = RatMatrix::hcat(bnd, h.iota);
  RatMatrix full = RatMatrix::hcat(partial, RatMatrix::identity(n));
  RatMatrix m = full.select_cols(pivot_columns(full));
  RatMatrix rhs(n, h.dim);
  for (std::size_t k = 0; k < h.dim; ++k) rhs(bnd.cols() + k, k) = 1;
  auto pt = solve(m.transpose(), rhs);
  if (!pt) throw std::logic_error("cohomology: basis completion failed");
  h.pi = pt->transpose();
  return h;
}

std::size_t cohomology_dim(const RatMatrix& d_in, const RatMatrix& d_out, std::size_t n) {
  std::size_t rin = d_in.empty() ? 0 : rank(d_in);
  std::size_t rout = d_out.empty() ? 0 : rank(d_out);
  return n - rout - rin;
}

}  // namespace isc
