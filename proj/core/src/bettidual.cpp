#include "isc/bettidual.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "isc/errors.hpp"

namespace isc {

int BettiProfile::at(int n) const {
  auto it = dims.find(n);
  return it == dims.end() ? 0 : it->second;
}

namespace {

struct Sections {
  std::map<int, std::vector<int>> gens;  // degree -> generator ids
  std::map<int, int> pos;                // generator -> index within its degree
};

Sections sections_layout(const InjComplex& k) {
  Sections s;
  for (int g = 0; g < k.size(); ++g) {
    auto& v = s.gens[k.degree[g]];
    s.pos[g] = static_cast<int>(v.size());
    v.push_back(g);
  }
  return s;
}

const std::vector<int>& gens_at(const Sections& s, int n) {
  static const std::vector<int> none;
  auto it = s.gens.find(n);
  return it == s.gens.end() ? none : it->second;
}

std::map<int, CohomologyData> global_cohomology(const InjComplex& k, const Sections& s, int lo, int hi) {
  std::map<int, CohomologyData> out;
  for (int n = lo; n <= hi; ++n) {
    const auto& g = gens_at(s, n);
    if (g.empty()) continue;
    out[n] = cohomology(k.block(g, gens_at(s, n - 1)), k.block(gens_at(s, n + 1), g), g.size());
  }
  return out;
}

// alpha^n for one map, as pi_T * Lambda * iota_C
std::map<int, RatMatrix> alpha_of(const std::vector<std::map<int, Rational>>& map, const Sections& sc,
                                  const Sections& st, const std::map<int, CohomologyData>& hc,
                                  const std::map<int, CohomologyData>& ht) {
  std::map<int, RatMatrix> out;
  for (const auto& [n, c] : hc) {
    auto t = ht.find(n);
    if (t == ht.end() || c.dim == 0 || t->second.dim == 0) continue;
    const auto& cg = gens_at(sc, n);
    RatMatrix lam(gens_at(st, n).size(), cg.size());
    for (std::size_t j = 0; j < cg.size(); ++j)
      for (const auto& [tg, v] : map[cg[j]]) lam(st.pos.at(tg), j) = v;
    out[n] = t->second.pi * lam * c.iota;
  }
  return out;
}

}  // namespace

AlphaFamily::AlphaFamily(const InjComplex& top, const SplittingData& sd) {
  const InjComplex& it = sd.model_t.inj;
  Sections sc = sections_layout(top), st = sections_layout(it);
  const int lo = std::min(top.lo(), it.lo()), hi = std::max(top.hi(), it.hi());
  auto hcd = global_cohomology(top, sc, lo, hi);
  auto htd = global_cohomology(it, st, lo, hi);
  for (const auto& [n, c] : hcd)
    if (c.dim) hc_[n] = static_cast<int>(c.dim);
  for (const auto& [n, c] : htd)
    if (c.dim) ht_[n] = static_cast<int>(c.dim);
  a0_ = alpha_of(lift_to_total(top, &sd.model_b, *sd.lambda_space, sd.retraction), sc, st, hcd, htd);
  for (const auto& v : sd.linear_part)
    basis_.push_back(alpha_of(lift_to_total(top, &sd.model_b, *sd.lambda_space, v), sc, st, hcd, htd));
}

std::map<int, int> AlphaFamily::ranks(const std::vector<Rational>& coords) const {
  if (coords.size() != basis_.size()) throw InvalidInput("coordinate count does not match the linear part");
  std::map<int, int> out;
  for (const auto& [n, a0] : a0_) {
    RatMatrix a = a0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      auto it = basis_[i].find(n);
      if (it != basis_[i].end() && !coords[i].is_zero()) a = a + it->second.scaled(coords[i]);
    }
    out[n] = static_cast<int>(rank(a));
  }
  return out;
}

GradedDims AlphaFamily::dims(const std::vector<Rational>& coords) const {
  auto r = ranks(coords);
  auto get = [](const std::map<int, int>& m, int n) {
    auto it = m.find(n);
    return it == m.end() ? 0 : it->second;
  };
  GradedDims out;
  int lo = 0, hi = 0;
  for (const auto* m : {&hc_, &ht_})
    if (!m->empty()) {
      lo = std::min(lo, m->begin()->first);
      hi = std::max(hi, m->rbegin()->first + 1);
    }
  for (int n = lo; n <= hi; ++n) {
    int d = get(hc_, n) - get(r, n) + get(ht_, n - 1) - get(r, n - 1);
    if (d) out[n] = d;
  }
  return out;
}

BettiProfile hyper_betti(const ISTower& tower) {
  if (!tower.complex) throw InvalidInput("tower has no complex on the total space");
  BettiProfile bp;
  bp.dims = tower.complex->hypercohomology();
  bp.sample_id = "seed " + std::to_string(tower.seed);
  if (tower.steps.size() == 1 && tower.top && tower.steps[0].split) {
    AlphaFamily fam(*tower.top, *tower.steps[0].split);
    bp.alpha_ranks = fam.ranks(tower.steps[0].coords);
    if (fam.dims(tower.steps[0].coords) != bp.dims)
      throw InvariantViolation("hypercohomology disagrees with ker alpha + coker alpha");
  }
  return bp;
}

namespace {

struct DepthOne {
  std::optional<AlphaFamily> family;
  GradedDims smooth;  // used when there is no singular stratum
  int codim = 0;
};

DepthOne depth_one(const PosetPtr& x, const Perversity& p) {
  auto codims = x->singular_codims();
  if (codims.size() > 1) throw InvalidInput("generic Betti numbers need a single singular codimension");
  DepthOne d;
  InjComplex top = constant_model(x);
  if (codims.empty()) {
    d.smooth = top.hypercohomology();
    return d;
  }
  d.codim = codims[0];
  int q = complement(p).at(d.codim);
  SplittingData sd = splitting_data(top.sheaf_on(stratum_selection(x, d.codim)), q);
  if (!sd.split) throw ObstructionNonzero(d.codim, sd.ext1_dim, sd.witness);
  d.family.emplace(top, sd);
  return d;
}

BettiProfile profile_at(const DepthOne& d, const std::vector<Rational>& coords, std::string id) {
  BettiProfile bp;
  bp.sample_id = std::move(id);
  if (!d.family) {
    bp.dims = d.smooth;
    return bp;
  }
  bp.alpha_ranks = d.family->ranks(coords);
  bp.dims = d.family->dims(coords);
  return bp;
}

bool leq_profile(const GradedDims& a, const GradedDims& b) {
  std::set<int> keys;
  for (const auto& [n, v] : a) keys.insert(n);
  for (const auto& [n, v] : b) keys.insert(n);
  for (int n : keys) {
    auto x = a.find(n), y = b.find(n);
    if ((x == a.end() ? 0 : x->second) > (y == b.end() ? 0 : y->second)) return false;
  }
  return true;
}

GradedDims coordinatewise_min(const GradedDims& a, const GradedDims& b) {
  GradedDims out;
  std::set<int> keys;
  for (const auto& [n, v] : a) keys.insert(n);
  for (const auto& [n, v] : b) keys.insert(n);
  for (int n : keys) {
    auto x = a.find(n), y = b.find(n);
    int m = std::min(x == a.end() ? 0 : x->second, y == b.end() ? 0 : y->second);
    if (m) out[n] = m;
  }
  return out;
}

}  // namespace

GenericBetti generic_betti(const PosetPtr& x, const Perversity& p, int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("need at least one sample");
  DepthOne d = depth_one(x, p);
  GenericBetti out;
  out.parameters = d.family ? d.family->parameters() : 0;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t sd = seed + static_cast<std::uint64_t>(s);
    auto coords = generic_coordinates(out.parameters, sd, d.codim);
    out.samples.push_back(profile_at(d, coords, "seed " + std::to_string(sd)));
  }
  GradedDims m = out.samples[0].dims;
  for (const auto& bp : out.samples) m = coordinatewise_min(m, bp.dims);
  for (const auto& bp : out.samples)
    if (bp.dims == m) {
      if (!out.attained) out.minimum = bp;
      ++out.attained;
    }
  if (!out.attained) {
    // no single sample is below all others; report the coordinatewise minimum
    out.minimum.dims = m;
    out.minimum.sample_id = "coordinatewise minimum";
  }
  if (out.parameters > 0 && out.attained < 2)
    throw MinimumUnstable("minimum attained by " + std::to_string(out.attained) + " of " + std::to_string(samples) +
                          " samples");
  return out;
}

BettiProfile grid_minimum(const PosetPtr& x, const Perversity& p, const std::vector<int>& values) {
  DepthOne d = depth_one(x, p);
  const int l = d.family ? d.family->parameters() : 0;
  std::vector<std::size_t> idx(l, 0);
  std::optional<BettiProfile> best;
  while (true) {
    std::vector<Rational> coords;
    std::string id = "grid (";
    for (int i = 0; i < l; ++i) {
      coords.emplace_back(values[idx[i]]);
      id += (i ? "," : "") + std::to_string(values[idx[i]]);
    }
    BettiProfile bp = profile_at(d, coords, id + ")");
    if (!best || (leq_profile(bp.dims, best->dims) && bp.dims != best->dims)) best = bp;
    else if (!leq_profile(best->dims, bp.dims)) best->dims = coordinatewise_min(best->dims, bp.dims);
    int i = 0;
    while (i < l && ++idx[i] == values.size()) idx[i++] = 0;
    if (i == l) break;
  }
  return *best;
}

DualityReport duality_check(const PosetPtr& x, const Perversity& p, const Perversity& q, int samples,
                            std::uint64_t seed) {
  DualityReport rep;
  rep.dim = x->dim();
  rep.p = p;
  rep.q = q;
  rep.profile_p = generic_betti(x, p, samples, seed).minimum;
  rep.profile_q = generic_betti(x, q, samples, seed).minimum;
  for (int i = 0; i <= rep.dim; ++i)
    if (rep.profile_p.at(i) != rep.profile_q.at(rep.dim - i)) rep.mismatched_degrees.push_back(i);
  rep.pass = rep.mismatched_degrees.empty();
  return rep;
}

DualityReport duality_check(const PosetPtr& x, const Perversity& p, int samples, std::uint64_t seed) {
  return duality_check(x, p, complement(p), samples, seed);
}

}  // namespace isc
