#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "isc/reduce.hpp"
#include "isc/sheaf.hpp"

namespace isc {

// Bounded complex of injective cellular sheaves on a selection. Generator g is
// a copy of I_{cell g} (stalk Q at every tau <= cell g) in degree[g]. The
// differential is stored by columns: col[g] maps target generators to
// coefficients and can only reach generators on faces of cell g. The stalk at
// tau is spanned by generators with cell >= tau, and global sections are the
// whole scalar complex.
struct InjComplex {
  Selection base;
  std::vector<int> cell, degree;
  std::vector<std::map<int, Rational>> col;

  int size() const { return static_cast<int>(cell.size()); }
  int add(int c, int deg);
  void set(int from, int to, const Rational& v);
  bool empty() const { return cell.empty(); }
  int lo() const;
  int hi() const;

  // generators of the stalk at tau in one degree, ascending id
  std::vector<int> stalk(int tau, int deg) const;
  // differential between two lists of generators
  RatMatrix block(const std::vector<int>& rows, const std::vector<int>& cols) const;
  // stalk complex at tau as (generators per degree, differentials)
  GradedDims stalk_cohomology(int tau) const;
  // global sections as a sparse complex (filtration unused)
  SparseComplex sections() const;
  GradedDims hypercohomology() const;
  // the same object as a stalk-level complex (restrictions are projections)
  ComplexPtr to_sheaf() const;
  // stalk-level complex on any selection of the same poset (generators may
  // live on cells outside it); sheaf_on(base) == to_sheaf()
  ComplexPtr sheaf_on(const Selection& sel) const;
  // drop generators on cells outside an open selection
  InjComplex restricted(const Selection& open) const;
  void validate() const;
};

// Stalk-level complex K together with a quasi-isomorphism K -> I. phi[g] is
// the row vector K^{deg g}(cell g) -> Q giving the component into I_{cell g}.
struct InjectiveModel {
  InjComplex inj;
  std::vector<RatVector> phi;
  ComplexPtr source;

  // the stalk map K^n(tau) -> I^n(tau), rows ordered as inj.stalk(tau, n)
  RatMatrix stalk_map(int tau, int n) const;
};

// Minimal injective model built cell by cell from the top dimension down.
InjectiveModel injective_model(const ComplexPtr& k);

// Hom^m(A, I) for a stalk-level source A and an injective target I. A degree-m
// element has one row vector per generator t of I, over A^{deg t - m}(cell t).
class HomComplex {
 public:
  HomComplex(ComplexPtr a, const InjComplex& i);

  int size(int m) const;
  // offset of generator t inside Hom^m, or -1
  int offset(int m, int t) const;
  // width of t's block in Hom^m
  int width(int m, int t) const;
  RatMatrix differential(int m) const;  // Hom^m -> Hom^{m+1}
  const ComplexPtr& source() const { return a_; }
  const InjComplex& target() const { return i_; }

  // pack/unpack per-generator rows
  RatVector pack(int m, const std::vector<RatVector>& rows) const;
  std::vector<RatVector> unpack(int m, const RatVector& v) const;

  // matrix of precomposition with a stalk-level morphism f: A2 -> A of degree 0,
  // as a map Hom^m(A, I) -> Hom^m(A2, I)
  RatMatrix precompose(int m, const HomComplex& other, const SheafMorphism& f) const;

  // stalk map A^n(tau) -> I^{n+m}(tau) of a degree-m element
  RatMatrix stalk_map(int m, const RatVector& v, int tau, int n) const;

  // restriction A^n(from) -> A^n(to), cached
  const RatMatrix& res(int n, int from, int to) const;

 private:
  void layout(int m) const;

  ComplexPtr a_;
  InjComplex i_;
  mutable std::map<int, std::vector<int>> off_;
  mutable std::map<int, int> size_;
  mutable std::map<std::tuple<int, int, int>, RatMatrix> res_cache_;
};

// Postcomposition: given psi in Hom^0(J_sheaf, I) (J injective, J_sheaf its
// stalk model) and phi in Hom^m(A, J), the composite in Hom^m(A, I).
RatVector postcompose(const HomComplex& psi_space, const RatVector& psi, const HomComplex& phi_space, int m,
                      const RatVector& phi, const HomComplex& out_space);

}  // namespace isc
