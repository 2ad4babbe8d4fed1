#include "doctest.h"
#include "fixtures.hpp"
#include "isc/errors.hpp"
#include "isc/sheaf.hpp"

using namespace isc;
using fixtures::share;

namespace {

std::vector<int> f_vector(const StratifiedPoset& p) {
  std::vector<int> f(p.dim() + 1, 0);
  for (const auto& c : p.cells()) ++f[c.dim];
  return f;
}

std::vector<int> rational_betti(const StratifiedPoset& p) {
  auto x = share(p);
  return fixtures::betti(hypercohomology(*constant_sheaf(full_selection(x), 0)), 0, p.dim());
}

}  // namespace

TEST_CASE("shipped triangulations have the expected face numbers and homology") {
  auto t = torus7();
  CHECK(t.size() == 42);
  CHECK(f_vector(t) == std::vector<int>{7, 21, 14});
  CHECK(rational_betti(t) == std::vector<int>{1, 2, 1});
  auto cp = cp2_9();
  CHECK(f_vector(cp) == std::vector<int>{9, 36, 84, 90, 36});
  CHECK(rational_betti(cp) == std::vector<int>{1, 0, 1, 0, 1});
}

TEST_CASE("cone sizes") {
  CHECK(cone_space(cycle_graph(3)).size() == 13);
  CHECK(cone_space(boundary_simplex(3)).size() == 29);
  auto c = cone_space(torus7());
  CHECK(c.size() == 85);
  CHECK(c.singular_codims() == std::vector<int>{3});
}

TEST_CASE("products multiply Euler characteristics and add codimensions") {
  auto tt = product_space(cycle_graph(3), cycle_graph(3));
  CHECK(rational_betti(tt) == std::vector<int>{1, 2, 1});
  auto pa = product_space(point_space(), boundary_simplex(2));
  CHECK(pa.size() == boundary_simplex(2).size());
  auto x = product_space(cycle_graph(3), suspension(torus7()));
  CHECK(x.dim() == 4);
  CHECK(x.singular_codims() == std::vector<int>{3});
  int circle_cells = 0;
  for (int c = 0; c < x.size(); ++c)
    if (x.codim(c) == 3) ++circle_cells;
  CHECK(circle_cells == 12);
}

TEST_CASE("validation rejects broken input") {
  std::vector<RawCell> cells{{"a", 0, "top"}, {"b", 0, "top"}, {"e", 1, "top"}};
  CHECK_THROWS_AS(StratifiedPoset::build(cells, {{"e", "a", 1}, {"e", "b", -1}}, {{"top", 0}, {"bad", 1}}),
                  ForbiddenCodimensionOne);
  std::vector<RawCell> cells2{{"a", 0, "sing"}, {"b", 0, "top"}, {"e", 1, "sing"}};
  CHECK_THROWS_AS(StratifiedPoset::build(cells2, {{"e", "a", 1}, {"e", "b", -1}}, {{"top", 0}, {"sing", 2}}),
                  StratumNotClosed);
  CHECK_THROWS_AS(StratifiedPoset::build(cells, {{"e", "a", 1}, {"e", "b", 1}, {"e", "q", 1}}, {{"top", 0}}),
                  InvalidInput);
  CHECK_THROWS_AS(from_simplicial({{1, 1, 2}}), InvalidInput);
}
