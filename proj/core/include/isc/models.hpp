#pragma once

#include <map>
#include <string>
#include <vector>

#include "isc/functors.hpp"
#include "isc/poset.hpp"
#include "isc/sheaf.hpp"

namespace isc {

// ---- simplicial fixtures -------------------------------------------------

StratifiedPoset boundary_simplex(int n);  // boundary of the n-simplex, vertices 1..n+1
StratifiedPoset cycle_graph(int k);       // k-gon, vertices 1..k
StratifiedPoset path_graph(int k);        // k vertices in a row
StratifiedPoset point_space();
StratifiedPoset torus7();                 // 7-vertex torus from data/
StratifiedPoset cp2_9();                  // 9-vertex complex projective plane from data/
void set_data_dir(const std::string& dir);
const std::string& data_dir();

// Cone with apex labelled "c" in its own stratum (codimension dim L + 1 unless
// given). Strata of L are kept on L and on the open cone cells over it.
StratifiedPoset cone_space(const StratifiedPoset& l, int apex_codim = -1);
// Suspension with poles "n" and "s", each its own stratum.
StratifiedPoset suspension(const StratifiedPoset& l);
// Staircase triangulation of A x B. Product vertex labels are "a|b"; strata
// are pairs of strata with added codimension, named "sa*sb".
StratifiedPoset product_space(const StratifiedPoset& a, const StratifiedPoset& b);

// ---- pushforward models --------------------------------------------------

struct BundleModelSpec {
  PosetPtr base;
  int n = 1;                                  // fiber sphere dimension
  std::map<std::string, Rational> euler;     // (n+1)-cell id -> value
};

// cellular projective resolution of the constant sheaf: P_sigma in degree -dim sigma
ProjComplex cellular_resolution(const Selection& base);

// cone(e: P[-n-1] -> Q) for the Euler cocycle e; cohomology sheaves Q in
// degrees 0 and n.
ComplexPtr sphere_bundle_pushforward(const BundleModelSpec& spec);
ComplexPtr torus_bundle_pushforward(const PosetPtr& base, const std::map<std::string, Rational>& e1,
                                    const std::map<std::string, Rational>& e2);
// cocycle that is 1 on one (n+1)-cell of a closed oriented n+1 dimensional base
std::map<std::string, Rational> generator_cocycle(const StratifiedPoset& base, int degree);
// coboundary of an integer cochain in the given degree (always a cocycle)
std::map<std::string, Rational> coboundary_cocycle(const StratifiedPoset& base, int degree,
                                                   const std::map<std::string, Rational>& cochain);
bool is_cocycle(const StratifiedPoset& base, int degree, const std::map<std::string, Rational>& c);

// A model for j^* i_* of the open part, placed on the cells of one singular
// stratum of X. The total space is not triangulated; only the stratum is.
struct AttachedModel {
  PosetPtr space;
  int codim = 0;
  ComplexPtr model;  // on stratum_selection(space, codim)
};
// Transports `model` (on its own poset) onto the codim-k stratum of X by cell
// ids. Product labels "a|b" are matched through their first factor.
AttachedModel attach_stratum_model(const PosetPtr& x, int codim, const ComplexPtr& model);

}  // namespace isc
