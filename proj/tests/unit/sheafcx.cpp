#include "doctest.h"
#include "fixtures.hpp"
#include "isc/errors.hpp"
#include "isc/sheaf.hpp"

using namespace isc;
using fixtures::betti;
using fixtures::share;

namespace {

// two-term complex Q --(a)--> Q on every cell of X
ComplexPtr scalar_map_complex(const Selection& base, const Rational& a) {
  auto q = constant_sheaf(base, 0);
  SheafComplex k;
  k.base = base;
  k.lo = 0;
  k.terms = {q->terms[0], q->terms[0]};
  k.d.assign(2, std::vector<RatMatrix>(base.parent->size(), RatMatrix(0, 0)));
  for (int c : base.cells) {
    k.d[1][c] = RatMatrix(0, 1);
    RatMatrix m(1, 1);
    m(0, 0) = a;
    k.d[0][c] = m;
  }
  return make_complex(std::move(k));
}

}  // namespace

TEST_CASE("hypercohomology methods agree on constant sheaves") {
  for (auto p : {boundary_simplex(2), boundary_simplex(3), torus7()}) {
    auto x = share(p);
    auto q = constant_sheaf(full_selection(x), 0);
    CHECK(hypercohomology(*q, HyperMethod::Cellular) == hypercohomology(*q, HyperMethod::ChainOfCells));
  }
}

TEST_CASE("shift, sums and Euler characteristic") {
  auto x = share(boundary_simplex(2));
  auto q = constant_sheaf(full_selection(x), 0);
  auto s = shift(q, 1);
  CHECK(betti(hypercohomology(*s), -1, 0) == std::vector<int>{1, 1});
  auto sum = direct_sum(q, s);
  CHECK(euler_characteristic(hypercohomology(*sum)) == 0);
  auto t = tensor(q, q);
  CHECK(hypercohomology(*t) == hypercohomology(*q));
}

TEST_CASE("acyclic complex and truncations") {
  auto x = share(boundary_simplex(3));
  auto sel = full_selection(x);
  auto iso = scalar_map_complex(sel, Rational(3));
  iso->validate();
  CHECK(hypercohomology(*iso).empty());
  auto zero = scalar_map_complex(sel, Rational(0));
  auto le = truncate(zero, 0, Side::Le);
  auto gt = truncate(zero, 0, Side::Gt);
  CHECK(betti(hypercohomology(*le.complex), 0, 2) == std::vector<int>{1, 0, 1});
  CHECK(betti(hypercohomology(*gt.complex), 1, 3) == std::vector<int>{1, 0, 1});
  le.map.validate();
  gt.map.validate();
}

TEST_CASE("cone of the identity is acyclic and quasi-isomorphism detection") {
  auto x = share(torus7());
  auto q = constant_sheaf(full_selection(x), 0);
  auto id = identity_morphism(q);
  CHECK(is_quasi_isomorphism(id));
  auto c = cone(id);
  for (int cell = 0; cell < x->size(); ++cell) CHECK(c.cone->stalk_cohomology(cell).empty());
  CHECK(!is_quasi_isomorphism(zero_morphism(q, q)));
  auto twice = scale(id, Rational(2));
  CHECK(is_quasi_isomorphism(twice));
  CHECK(compose(id, twice).at(0, 0) == RatMatrix{{2}});
}

TEST_CASE("constancy check detects a twisted local system") {
  auto x = share(cycle_graph(4));
  auto sel = full_selection(x);
  auto q = constant_sheaf(sel, 0);
  CHECK(is_constant_rank_one(q->terms[0], sel).constant);
  CellSheaf twisted = q->terms[0];
  twisted.res[0] = RatMatrix{{-1}};
  auto r = is_constant_rank_one(twisted, sel);
  CHECK(!r.constant);
  CHECK(betti(hypercohomology(*sheaf_in_degree(twisted, 0)), 0, 1) == std::vector<int>{0, 0});
}

TEST_CASE("non-functorial data is rejected") {
  auto x = share(boundary_simplex(2));
  auto q = constant_sheaf(full_selection(x), 0);
  SheafComplex bad = *q;
  bad.terms.push_back(bad.terms[0]);
  bad.d.assign(2, std::vector<RatMatrix>(x->size(), RatMatrix{{1}}));
  bad.d[1].assign(x->size(), RatMatrix(0, 1));
  bad.d[0][0] = RatMatrix{{2}};
  CHECK_THROWS(bad.validate());
}
