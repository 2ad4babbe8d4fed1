#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isc/injective.hpp"
#include "isc/models.hpp"
#include "isc/sheaf.hpp"

namespace isc {

// ---- perversities --------------------------------------------------------

struct Perversity {
  std::map<int, int> values;  // codimension k in 2..d_max -> value

  int d_max() const { return values.empty() ? 1 : values.rbegin()->first; }
  int at(int k) const;
  void validate() const;
  std::string str() const;  // "2:0,3:0,4:1"
  bool operator==(const Perversity& o) const { return values == o.values; }

  // a standard name or an explicit "k:v,k:v" list
  static Perversity parse(const std::string& text, int d_max);
};

// zero | total | lower-middle | upper-middle
Perversity standard_perversity(const std::string& name, int d_max);
// k -> k - 2 - p(k)
Perversity complement(const Perversity& p);

// ---- axioms --------------------------------------------------------------

enum class Variant { IC, IS };

struct AxiomCheck {
  std::string axiom;  // "a", "b", "c", "d"
  int codim = 0;
  int degree = 0;
  bool pass = true;
  std::string detail;
};

struct AxiomReport {
  bool pass = true;
  std::vector<AxiomCheck> checks;
  std::vector<std::string> failures() const;
};

AxiomReport check_axioms(const InjComplex& k, const Perversity& p, Variant v);
// replaces K by an injective model first
AxiomReport check_axioms(const ComplexPtr& k, const Perversity& p, Variant v);

// ---- splitting -----------------------------------------------------------

// The truncation triangle tau<=q B -> B -> tau>q B on the stratum, together
// with everything needed to choose retractions. Hom spaces are taken into
// injective models, so Hom^0 cocycles are honest chain maps.
struct SplittingData {
  int qbar = 0;
  ComplexPtr b;
  InjectiveModel model_b;  // B -> I_B
  ComplexPtr b_sheaf;      // I_B as a stalk-level complex
  Truncation low;          // T -> I_B
  Truncation high;         // I_B -> Q
  InjectiveModel model_t;  // T -> I_T

  bool split = false;
  // lambda in Hom^0(I_B, I_T) with lambda o f homotopic to T -> I_T
  RatVector retraction;
  RatVector homotopy;  // in Hom^{-1}(T, I_T)
  // basis of Hom_D(tau>q B, tau<=q B) pushed into Hom^0(I_B, I_T)
  std::vector<RatVector> linear_part;
  int ext1_dim = 0;
  std::string witness;  // connecting class coordinates when not split

  std::shared_ptr<const HomComplex> lambda_space;  // Hom(I_B, I_T)

  int linear_part_dim() const { return static_cast<int>(linear_part.size()); }
  // retraction + sum c_i * linear_part[i]
  RatVector retraction_at(const std::vector<Rational>& coords) const;
};

SplittingData splitting_data(const ComplexPtr& b, int qbar);

// The four equivalent conditions of the split-triangle lemma, each decided by
// its own linear system.
struct LemmaConditions {
  bool retraction = false;       // lambda o f = id up to homotopy
  bool section = false;          // g o s = id up to homotopy
  bool decomposition = false;    // B = tau<= + tau> compatibly with f and g
  bool connecting_zero = false;  // the class of the connecting map vanishes
  bool agree() const {
    return retraction == section && section == decomposition && decomposition == connecting_zero;
  }
};

LemmaConditions lemma_conditions(const ComplexPtr& b, int qbar);

// ---- towers --------------------------------------------------------------

// Coordinates on the linear part per codimension; codimensions without an
// entry are sampled from integers in [-10, 10] with the seed.
struct RetractionChoice {
  std::map<int, std::vector<Rational>> coords;
  std::uint64_t seed = 0;
};

std::vector<Rational> generic_coordinates(int count, std::uint64_t seed, int codim);

struct TowerStep {
  int codim = 0;
  int qbar = 0;
  std::shared_ptr<const SplittingData> split;
  std::vector<Rational> coords;
  GradedDims betti;  // hypercohomology after the step, when materialized
};

struct ISTower {
  PosetPtr space;
  Perversity perversity;
  std::uint64_t seed = 0;
  std::vector<TowerStep> steps;
  // the complex on the whole space; absent for towers over attached models
  std::optional<InjComplex> complex;
  // the injective model of the constant sheaf on the top stratum
  std::optional<InjComplex> top;
};

// The morphism I_C -> I (I injective on the stratum) induced by an element of
// Hom^0(source, I), where source is B = j^* I_C itself (model == nullptr) or
// the stalk form of an injective model B -> I_B. Stored by columns: source
// generator -> (target generator -> coefficient).
std::vector<std::map<int, Rational>> lift_to_total(const InjComplex& c, const InjectiveModel* model,
                                                   const HomComplex& space, const RatVector& element);

// cone(map: c -> target)[-1]; c generators first
InjComplex shifted_cone(const InjComplex& c, const InjComplex& target,
                        const std::vector<std::map<int, Rational>>& map, const Selection& base);

struct StepResult {
  InjComplex complex;
  TowerStep step;
};

// prev lives on U_r (cells of codimension < r); the result on U_{r+1}.
StepResult build_is_step(const InjComplex& prev, const PosetPtr& x, const Perversity& p, int r,
                         const RetractionChoice& choice);
ISTower build_is(const PosetPtr& x, const Perversity& p, const RetractionChoice& choice = {});
// tower over a stratum model only: splitting data and choices, no complex
ISTower build_is(const AttachedModel& m, const Perversity& p, const RetractionChoice& choice = {});

// Deligne construction. With truncate_model=false the stratum truncation is
// taken of B itself instead of its injective model (same result up to
// quasi-isomorphism, different representatives).
InjComplex build_ic(const PosetPtr& x, const Perversity& p, bool truncate_model = true);

InjComplex constant_model(const PosetPtr& x);

}  // namespace isc
