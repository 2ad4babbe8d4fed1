#include "doctest.h"
#include "fixtures.hpp"
#include "isc/errors.hpp"
#include "isc/istower.hpp"

using namespace isc;
using fixtures::betti;
using fixtures::share;

namespace {

// cone formula: IH^i(cL) = H^i(L) for i <= p(k), else 0
std::vector<int> cone_formula(const StratifiedPoset& l, int pk, int top) {
  auto h = fixtures::simplicial_betti(l);
  std::vector<int> out(top + 1, 0);
  for (int i = 0; i <= top && i < static_cast<int>(h.size()); ++i)
    if (i <= pk) out[i] = h[i];
  return out;
}

}  // namespace

TEST_CASE("perversities") {
  auto m = standard_perversity("lower-middle", 6);
  CHECK(m.str() == "2:0,3:0,4:1,5:1,6:2");
  CHECK(complement(m) == standard_perversity("upper-middle", 6));
  CHECK(complement(standard_perversity("zero", 5)) == standard_perversity("total", 5));
  CHECK(complement(complement(m)) == m);
  CHECK(standard_perversity("total", 2).at(2) == 0);
  CHECK(Perversity::parse("2:0,3:1", 3).at(3) == 1);
  CHECK_THROWS_AS(Perversity::parse("2:0,3:2", 3), InvalidInput);
  CHECK_THROWS_AS(standard_perversity("middle", 4), InvalidInput);
}

TEST_CASE("intersection cohomology of a cone matches the cone formula") {
  auto l = torus7();
  auto x = share(cone_space(l));
  for (const char* name : {"zero", "total"}) {
    auto p = standard_perversity(name, 3);
    InjComplex ic = build_ic(x, p);
    ic.validate();
    CHECK(betti(ic.hypercohomology(), 0, 2) == cone_formula(l, p.at(3), 2));
    CHECK(check_axioms(ic, p, Variant::IC).pass);
    CHECK(build_ic(x, p, false).hypercohomology() == ic.hypercohomology());
  }
}

TEST_CASE("intersection space complexes of a cone") {
  auto x = share(cone_space(torus7()));
  auto zero = standard_perversity("zero", 3);  // qbar(3) = 1
  ISTower t = build_is(x, zero, {{}, 7});
  REQUIRE(t.complex);
  t.complex->validate();
  CHECK(betti(t.complex->hypercohomology(), 0, 3) == std::vector<int>{0, 0, 1, 0});
  CHECK(check_axioms(*t.complex, zero, Variant::IS).pass);
  auto total = standard_perversity("total", 3);  // qbar(3) = 0
  ISTower t0 = build_is(x, total, {{}, 7});
  CHECK(betti(t0.complex->hypercohomology(), 0, 3) == std::vector<int>{0, 2, 1, 0});
  CHECK(check_axioms(*t0.complex, total, Variant::IS).pass);
}

TEST_CASE("untruncated pushforward fails the IS vanishing condition") {
  auto x = share(cone_space(torus7()));
  // i_* of an injective complex keeps its generators
  InjComplex pushed = constant_model(x);
  pushed.base = full_selection(x);
  CHECK(betti(pushed.stalk_cohomology(x->index("c")), 0, 2) == std::vector<int>{1, 2, 1});
  auto rep = check_axioms(pushed, standard_perversity("zero", 3), Variant::IS);
  CHECK(!rep.pass);
  bool c_failed = false;
  for (const auto& c : rep.checks) c_failed = c_failed || (c.axiom == "c" && !c.pass && c.degree == 0);
  CHECK(c_failed);
}

TEST_CASE("splitting data") {
  auto circle = share(cycle_graph(3));
  auto q = constant_sheaf(full_selection(circle), 0);
  auto sum = direct_sum(q, shift(q, -1));
  auto sd = splitting_data(sum, 0);
  CHECK(sd.split);
  CHECK(sd.linear_part_dim() == 1);
  auto top = splitting_data(q, 0);
  CHECK(top.split);
  CHECK(top.linear_part_dim() == 0);

  auto s2 = share(boundary_simplex(3));
  auto hopf = sphere_bundle_pushforward({s2, 1, generator_cocycle(*s2, 2)});
  auto hs = splitting_data(hopf, 0);
  CHECK(!hs.split);
  CHECK(hs.ext1_dim == 1);
  auto lc = lemma_conditions(hopf, 0);
  CHECK(lc.agree());
  CHECK(!lc.retraction);
  auto lc2 = lemma_conditions(sum, 0);
  CHECK(lc2.agree());
  CHECK(lc2.retraction);
}

TEST_CASE("Hopf stratum model obstructs every perversity") {
  auto x = share(product_space(boundary_simplex(3), cone_space(cycle_graph(3))));
  auto s2 = share(boundary_simplex(3));
  auto m = attach_stratum_model(x, 2, sphere_bundle_pushforward({s2, 1, generator_cocycle(*s2, 2)}));
  for (const char* name : {"zero", "total", "lower-middle", "upper-middle"}) {
    auto p = standard_perversity(name, x->dim());
    CHECK_THROWS_AS(build_is(m, p), ObstructionNonzero);
  }
}
