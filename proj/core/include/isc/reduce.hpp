#pragma once

#include <map>
#include <set>
#include <vector>

#include "isc/matrix.hpp"

namespace isc {

// Cochain complex on a graded, filtered basis with sparse differential.
// Cancelling a pair (x, y) with <dx, y> invertible and equal filtration is a
// filtered homotopy equivalence, so the spectral sequence from E_1 on and the
// cohomology are unchanged. Used when a total complex is too large to handle
// densely.
class SparseComplex {
 public:
  int add_generator(int degree, int filtration);
  // coefficient of `to` in d(from)
  void add_entry(int from, int to, const Rational& v);

  // Cancel until no admissible pair remains. With respect_filtration=false
  // the result has zero differential.
  void reduce(bool respect_filtration);

  std::size_t size() const { return deg_.size(); }
  bool alive(int g) const { return alive_[g]; }
  int degree(int g) const { return deg_[g]; }
  int filtration(int g) const { return filt_[g]; }
  std::vector<int> survivors() const;
  std::map<int, int> graded_dims() const;
  const std::map<int, Rational>& column(int g) const { return col_[g]; }

 private:
  void cancel(int x, int y);
  void set(int from, int to, Rational v);

  std::vector<int> deg_, filt_;
  std::vector<char> alive_;
  std::vector<std::map<int, Rational>> col_;  // d(from) entries
  std::vector<std::set<int>> row_;            // sources hitting a target
};

}  // namespace isc
