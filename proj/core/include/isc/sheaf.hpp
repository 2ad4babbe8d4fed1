#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "isc/matrix.hpp"
#include "isc/poset.hpp"
#include "isc/reduce.hpp"

namespace isc {

using GradedDims = std::map<int, int>;  // degree -> dimension, zeros omitted

// A cellular sheaf on a selection: a stalk per cell and a restriction map per
// covering pair, indexed by the parent poset's cell and edge numbers.
struct CellSheaf {
  Selection base;
  std::vector<int> dims;       // per parent cell, 0 off the base
  std::vector<RatMatrix> res;  // per parent edge, dims[coface] x dims[face]

  int stalk(int c) const { return dims[c]; }
  bool edge_in_base(int e) const;
  // composite restriction sigma -> tau along any chain of covering pairs
  RatMatrix restriction(int sigma, int tau) const;
  // restriction maps rho -> tau for every tau in targets (all >= rho)
  std::map<int, RatMatrix> restrictions_from(int rho, const std::vector<int>& targets) const;
  void validate() const;
};

CellSheaf zero_sheaf(const Selection& base);

struct SheafComplex {
  Selection base;
  int lo = 0;
  std::vector<CellSheaf> terms;
  std::vector<std::vector<RatMatrix>> d;  // d[k][cell]: terms[k] -> terms[k+1]

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool in_range(int n) const { return n >= lo && n <= hi(); }
  bool is_zero() const;
  int dim(int n, int c) const { return in_range(n) ? terms[n - lo].dims[c] : 0; }
  RatMatrix diff(int n, int c) const;
  RatMatrix res(int n, int e) const;
  int total_dim(int c) const;
  GradedDims stalk_cohomology(int c) const;
  void validate() const;
};

using ComplexPtr = std::shared_ptr<const SheafComplex>;

// Degreewise natural transformation K^n -> L^{n+degree}.
struct SheafMorphism {
  ComplexPtr source, target;
  int degree = 0;
  std::map<int, std::vector<RatMatrix>> comp;  // source degree -> per cell

  RatMatrix at(int n, int c) const;
  void set(int n, int c, RatMatrix m);
  // naturality plus d f = (-1)^degree f d
  void validate() const;
  bool is_zero() const;
};

ComplexPtr make_complex(SheafComplex k);
ComplexPtr zero_complex(const Selection& base);
ComplexPtr constant_sheaf(const Selection& base, int degree);
ComplexPtr shift(const ComplexPtr& k, int by);
ComplexPtr direct_sum(const ComplexPtr& a, const ComplexPtr& b);
ComplexPtr tensor(const ComplexPtr& a, const ComplexPtr& b);
// drop zero terms at both ends
ComplexPtr normalize(const ComplexPtr& k);
// single sheaf placed in one degree
ComplexPtr sheaf_in_degree(const CellSheaf& f, int degree);

SheafMorphism identity_morphism(const ComplexPtr& k);
SheafMorphism zero_morphism(const ComplexPtr& a, const ComplexPtr& b);
SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f);  // g after f
SheafMorphism add(const SheafMorphism& f, const SheafMorphism& g);
SheafMorphism scale(const SheafMorphism& f, const Rational& s);

CellSheaf cohomology_sheaf(const SheafComplex& k, int i);
// induced map on H^i at one cell
RatMatrix induced_on_cohomology(const SheafMorphism& f, int i, int c);
// f is a quasi-isomorphism: iso on every stalk cohomology
bool is_quasi_isomorphism(const SheafMorphism& f);

enum class Side { Le, Gt };
struct Truncation {
  ComplexPtr complex;
  SheafMorphism map;  // tau<=n K -> K for Le, K -> tau>n K for Gt
};
Truncation truncate(const ComplexPtr& k, int n, Side side);

struct ConeResult {
  ComplexPtr cone;            // A[1] + B in each degree, A part first
  SheafMorphism from_target;  // B -> cone
  SheafMorphism to_shift;     // cone -> A[1]
};
ConeResult cone(const SheafMorphism& f);

enum class HyperMethod { Auto, ChainOfCells, Cellular };
// total complex of the double complex: filtration = global-sections degree p
SparseComplex total_complex(const SheafComplex& k, HyperMethod method);
GradedDims hypercohomology(const SheafComplex& k, HyperMethod method = HyperMethod::Auto);

// strictly increasing chains in a selection, grouped by length-1
std::vector<std::vector<std::vector<int>>> cell_chains(const Selection& sel);

struct ConstancyReport {
  bool constant = false;
  int components = 0;
  int sections = 0;
  std::string reason;
};
ConstancyReport is_constant_rank_one(const CellSheaf& f, const Selection& within);

int euler_characteristic(const GradedDims& g);

}  // namespace isc
