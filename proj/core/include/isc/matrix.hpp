#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "isc/rational.hpp"

namespace isc {

using RatVector = std::vector<Rational>;

// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t rows);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const;
  RatMatrix transpose() const;
  RatVector column(std::size_t j) const;
  RatVector row(std::size_t i) const;
  void set_column(std::size_t j, const RatVector& v);

  RatMatrix select_rows(const std::vector<std::size_t>& idx) const;
  RatMatrix select_cols(const std::vector<std::size_t>& idx) const;
  RatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const RatMatrix& b);
  void add_block(std::size_t r0, std::size_t c0, const RatMatrix& b);

  static RatMatrix hcat(const RatMatrix& a, const RatMatrix& b);
  static RatMatrix vcat(const RatMatrix& a, const RatMatrix& b);
  static RatMatrix kron(const RatMatrix& a, const RatMatrix& b);

  RatMatrix operator*(const RatMatrix& b) const;
  RatVector operator*(const RatVector& v) const;
  RatMatrix operator+(const RatMatrix& b) const;
  RatMatrix operator-(const RatMatrix& b) const;
  RatMatrix scaled(const Rational& s) const;
  RatMatrix operator-() const { return scaled(Rational(-1)); }

  bool operator==(const RatMatrix& b) const { return r_ == b.r_ && c_ == b.c_ && a_ == b.a_; }
  bool operator!=(const RatMatrix& b) const { return !(*this == b); }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

// Reduced row echelon form with first-nonzero pivoting.
struct Echelon {
  RatMatrix r;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
Echelon rref(RatMatrix m);

std::size_t rank(const RatMatrix& m);

// Null space basis as the columns of the returned cols×k matrix.
RatMatrix kernel_basis(const RatMatrix& m);

struct AffineSolution {
  std::optional<RatVector> particular;
  RatMatrix kernel;  // columns span the solution space of m·x = 0
};
AffineSolution solve_affine(const RatMatrix& m, const RatVector& b);

// Some X with m·X = b, if one exists.
std::optional<RatMatrix> solve(const RatMatrix& m, const RatMatrix& b);

std::vector<std::size_t> pivot_columns(const RatMatrix& m);
RatMatrix column_basis(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);

// Cohomology of C^{n-1} -> C^n -> C^{n+1} at C^n. iota: H -> C^n picks cocycle
// representatives; pi: C^n -> H kills coboundaries and inverts iota on cocycles.
struct CohomologyData {
  std::size_t dim = 0;
  RatMatrix iota;
  RatMatrix pi;
};
CohomologyData cohomology(const RatMatrix& d_in, const RatMatrix& d_out, std::size_t n);

// Only dimensions, no representatives.
std::size_t cohomology_dim(const RatMatrix& d_in, const RatMatrix& d_out, std::size_t n);

}  // namespace isc
