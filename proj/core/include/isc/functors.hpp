#pragma once

#include <map>
#include <vector>

#include "isc/sheaf.hpp"

namespace isc {

// j^* for any locally closed selection inside the base of k.
ComplexPtr restrict_to(const ComplexPtr& k, const Selection& sel);

// Pushforward along a closed inclusion Z -> into: stalks of k on Z, zero off Z.
ComplexPtr extend_by_zero_closed(const ComplexPtr& k, const Selection& into);
// Canonical map M -> ext for M on `into` whose restriction to Z equals k:
// identity on stalks over Z, zero elsewhere.
SheafMorphism closed_unit(const ComplexPtr& m, const ComplexPtr& ext);

// Ri_* along an open inclusion U -> into. The stalk at sigma is the total
// complex over chains of {tau in U : tau >= sigma} with coefficients in K;
// restriction maps project onto chains of the smaller star.
class OpenPushforward {
 public:
  struct Gen {
    int chain;  // index into chains()
    int q;      // degree in K
    int i;      // basis vector of K^q at the chain's first cell
  };

  OpenPushforward(ComplexPtr k, const Selection& into);

  const ComplexPtr& complex() const { return out_; }
  const ComplexPtr& source() const { return k_; }
  const std::vector<std::vector<int>>& chains() const { return chains_; }
  // generators of the stalk at sigma in total degree n, in matrix order
  const std::vector<Gen>& stalk_basis(int sigma, int n) const;

  // M -> Ri_*K from a comparison M|_U -> K: x goes to the family of its
  // restrictions placed on length-0 chains.
  SheafMorphism unit(const ComplexPtr& m, const SheafMorphism& comparison) const;
  // Ri_*K|_U -> K at sigma in U: projection onto the length-0 chain (sigma).
  RatMatrix counit_at(int sigma, int n) const;

 private:
  ComplexPtr k_;
  ComplexPtr out_;
  std::vector<std::vector<int>> chains_;
  std::map<std::pair<int, int>, std::vector<Gen>> basis_;
};

OpenPushforward derived_pushforward_open(const ComplexPtr& k, const Selection& into);

// Complex of representable projectives P_sigma (stalk Q at every tau >= sigma).
// A generator is a copy of P_cell in one degree; col[g] lists the coefficients
// of D(g), which can only hit generators on faces of cell(g).
struct ProjComplex {
  Selection base;
  std::vector<int> cell, degree;
  std::vector<std::map<int, Rational>> col;

  int add(int c, int deg);
  ComplexPtr to_sheaf() const;
  // generators whose cell is <= tau in a fixed degree, ascending id
  std::vector<int> stalk(int tau, int deg) const;
};

struct ProjectiveResolution {
  ProjComplex proj;
  ComplexPtr complex;          // proj.to_sheaf()
  SheafMorphism augmentation;  // complex -> K, a quasi-isomorphism
};
ProjectiveResolution projective_resolution(const ComplexPtr& k);

struct DerivedHomResult {
  GradedDims graded_dims;
  // chain maps P(A) -> B of degree n, one per basis class
  std::map<int, std::vector<SheafMorphism>> representatives;
  ComplexPtr replacement;  // P(A)
};
DerivedHomResult derived_hom(const ComplexPtr& a, const ComplexPtr& b, const std::vector<int>& rep_degrees = {0});

// Longest strictly increasing chain of cells in a selection, minus one.
int chain_length(const Selection& sel);

}  // namespace isc
