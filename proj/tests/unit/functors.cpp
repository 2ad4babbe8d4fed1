#include "doctest.h"
#include "fixtures.hpp"
#include "isc/functors.hpp"
#include "isc/injective.hpp"
#include "isc/models.hpp"

using namespace isc;
using fixtures::betti;
using fixtures::share;

namespace {

GradedDims apex_stalk_of_pushforward(const StratifiedPoset& link) {
  auto x = share(cone_space(link));
  int k = x->dim();
  auto u = open_complement(x, k);
  auto q = constant_sheaf(u, 0);
  auto push = derived_pushforward_open(q, full_selection(x));
  return push.complex()->stalk_cohomology(x->index("c"));
}

}  // namespace

TEST_CASE("pushforward from the complement of a cone point computes link cohomology") {
  CHECK(betti(apex_stalk_of_pushforward(cycle_graph(3)), 0, 1) == std::vector<int>{1, 1});
  CHECK(betti(apex_stalk_of_pushforward(torus7()), 0, 2) == std::vector<int>{1, 2, 1});
  CHECK(betti(apex_stalk_of_pushforward(boundary_simplex(3)), 0, 2) == std::vector<int>{1, 0, 1});
}

TEST_CASE("pushforward preserves global hypercohomology of the open part") {
  auto x = share(cone_space(cycle_graph(4)));
  auto u = open_complement(x, 2);
  auto q = constant_sheaf(u, 0);
  auto push = derived_pushforward_open(q, full_selection(x));
  CHECK(betti(hypercohomology(*push.complex()), 0, 1) == betti(hypercohomology(*q), 0, 1));
  auto unit = push.unit(constant_sheaf(full_selection(x), 0), identity_morphism(q));
  unit.validate();
}

TEST_CASE("closed pushforward and restriction") {
  auto x = share(cone_space(cycle_graph(3)));
  auto z = stratum_selection(x, 2);
  auto q = constant_sheaf(z, 0);
  auto ext = extend_by_zero_closed(q, full_selection(x));
  CHECK(ext->dim(0, x->index("c")) == 1);
  CHECK(ext->dim(0, 0) == 0);
  auto back = restrict_to(ext, z);
  CHECK(hypercohomology(*back) == hypercohomology(*q));
}

TEST_CASE("derived hom of constant sheaves is sphere cohomology") {
  auto x = share(boundary_simplex(3));
  auto q = constant_sheaf(full_selection(x), 0);
  auto h = derived_hom(q, q);
  CHECK(betti(h.graded_dims, 0, 2) == std::vector<int>{1, 0, 1});
  REQUIRE(h.representatives[0].size() == 1);
  h.representatives[0][0].validate();
}

TEST_CASE("projective resolution is a quasi-isomorphism") {
  auto x = share(boundary_simplex(2));
  auto q = constant_sheaf(full_selection(x), 0);
  auto r = projective_resolution(q);
  r.augmentation.validate();
  CHECK(is_quasi_isomorphism(r.augmentation));
}

TEST_CASE("injective models are quasi-isomorphic to their source") {
  auto x = share(cone_space(cycle_graph(3)));
  auto u = open_complement(x, 2);
  auto push = derived_pushforward_open(constant_sheaf(u, 0), full_selection(x));
  auto m = injective_model(push.complex());
  m.inj.validate();
  const auto& k = *push.complex();
  for (int tau = 0; tau < x->size(); ++tau) {
    CHECK(m.inj.stalk_cohomology(tau) == k.stalk_cohomology(tau));
    for (int n = k.lo; n < k.hi(); ++n) {
      RatMatrix di = m.inj.block(m.inj.stalk(tau, n + 1), m.inj.stalk(tau, n));
      CHECK(di * m.stalk_map(tau, n) == m.stalk_map(tau, n + 1) * k.diff(n, tau));
    }
  }
  CHECK(m.inj.hypercohomology() == hypercohomology(k));
}

TEST_CASE("hom into an injective computes derived hom") {
  auto x = share(boundary_simplex(3));
  auto q = constant_sheaf(full_selection(x), 0);
  auto m = injective_model(q);
  HomComplex h(q, m.inj);
  std::vector<int> dims;
  for (int i = 0; i <= 2; ++i) {
    RatMatrix din = h.differential(i - 1), dout = h.differential(i);
    dims.push_back(cohomology_dim(din, dout, h.size(i)));
  }
  CHECK(dims == std::vector<int>{1, 0, 1});
}
