#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "isc/istower.hpp"

namespace isc {

struct BettiProfile {
  GradedDims dims;
  std::map<int, int> alpha_ranks;  // only for towers of depth one
  std::string sample_id;

  int at(int n) const;
};

// The affine family alpha(c) = A_0 + sum c_i A_i of maps
// H(X \ Z) -> H(Z; tau<=q B) over the linear part of one splitting.
class AlphaFamily {
 public:
  AlphaFamily(const InjComplex& top, const SplittingData& sd);

  int parameters() const { return static_cast<int>(basis_.size()); }
  std::map<int, int> ranks(const std::vector<Rational>& coords) const;
  // dims(n) = dim ker alpha^n + dim coker alpha^{n-1}
  GradedDims dims(const std::vector<Rational>& coords) const;
  const GradedDims& source_dims() const { return hc_; }
  const GradedDims& target_dims() const { return ht_; }

 private:
  std::map<int, RatMatrix> a0_;
  std::vector<std::map<int, RatMatrix>> basis_;
  GradedDims hc_, ht_;
};

BettiProfile hyper_betti(const ISTower& tower);

struct GenericBetti {
  BettiProfile minimum;
  std::vector<BettiProfile> samples;
  int attained = 0;  // samples equal to the minimum
  int parameters = 0;
};

// Requires at most one singular codimension. Throws MinimumUnstable when the
// minimum is attained by a single sample.
GenericBetti generic_betti(const PosetPtr& x, const Perversity& p, int samples, std::uint64_t seed);
// minimum over all coordinates in values^L (the exhaustive grid)
BettiProfile grid_minimum(const PosetPtr& x, const Perversity& p, const std::vector<int>& values);

struct DualityReport {
  bool pass = false;
  int dim = 0;
  Perversity p, q;
  BettiProfile profile_p, profile_q;
  std::vector<int> mismatched_degrees;
};

// generic profiles for p and its complement, compared under i <-> d - i
DualityReport duality_check(const PosetPtr& x, const Perversity& p, int samples, std::uint64_t seed);
// the same comparison for an arbitrary pair
DualityReport duality_check(const PosetPtr& x, const Perversity& p, const Perversity& q, int samples,
                            std::uint64_t seed);

}  // namespace isc
