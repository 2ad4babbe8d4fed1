#include "doctest.h"
#include "fixtures.hpp"
#include "isc/obstruction.hpp"

using namespace isc;
using fixtures::share;

namespace {

std::vector<int> row(const SpectralPage& pg, int q, int pmax) {
  std::vector<int> out;
  for (int p = 0; p <= pmax; ++p) out.push_back(pg.entry(p, q));
  return out;
}

ComplexPtr hopf_model(PosetPtr s2) {
  return sphere_bundle_pushforward({s2, 1, generator_cocycle(*s2, 2)});
}

void check_structure(const SheafComplex& k) {
  SpectralSequence ss(k);
  CHECK(ss.abutment() == hypercohomology(k));
  for (int r = 2; r <= ss.bound(); ++r) {
    SpectralPage pg = ss.page(r);
    SpectralPage next = ss.page(r + 1);
    for (const auto& [pq, d] : pg.differentials) {
      auto it = pg.differentials.find({pq.first + r, pq.second - r + 1});
      if (it != pg.differentials.end()) CHECK((it->second * d).is_zero());
    }
    // E_{r+1} = ker d_r / im d_r
    for (const auto& [pq, dim] : pg.entries) {
      int out = 0, in = 0;
      if (auto it = pg.differentials.find(pq); it != pg.differentials.end()) out = static_cast<int>(rank(it->second));
      if (auto it = pg.differentials.find({pq.first - r, pq.second + r - 1}); it != pg.differentials.end())
        in = static_cast<int>(rank(it->second));
      CHECK(next.entry(pq.first, pq.second) == dim - out - in);
    }
  }
}

}  // namespace

TEST_CASE("constant sheaf has a one-row spectral sequence") {
  auto x = share(boundary_simplex(3));
  auto q = constant_sheaf(full_selection(x), 0);
  auto pages = ss_pages(*q, 3);
  CHECK(row(pages[0], 0, 2) == std::vector<int>{1, 0, 1});
  CHECK(pages[0].degenerate());
  CHECK(obstruction_scan(*q, 0).verdict == ScanVerdict::Clear);
  check_structure(*q);
}

TEST_CASE("Hopf model has a nonzero d2 out of (0,1)") {
  auto x = share(boundary_simplex(3));
  auto b = hopf_model(x);
  auto pages = ss_pages(*b, 3);
  CHECK(row(pages[0], 0, 2) == std::vector<int>{1, 0, 1});
  CHECK(row(pages[0], 1, 2) == std::vector<int>{1, 0, 1});
  REQUIRE(pages[0].differentials.count({0, 1}));
  CHECK(!pages[0].differentials.at({0, 1}).is_zero());
  auto scan = obstruction_scan(*b, 0);
  CHECK(scan.verdict == ScanVerdict::Obstructed);
  REQUIRE(!scan.witnesses.empty());
  CHECK(scan.witnesses[0].r == 2);
  CHECK(scan.witnesses[0].p == 0);
  CHECK(scan.witnesses[0].q == 1);
  check_structure(*b);
}

TEST_CASE("torus bundle model has three rows and obstructs both windows") {
  auto x = share(boundary_simplex(3));
  auto e = generator_cocycle(*x, 2);
  auto b = torus_bundle_pushforward(x, e, e);
  auto pages = ss_pages(*b, 2);
  CHECK(row(pages[0], 0, 2) == std::vector<int>{1, 0, 1});
  CHECK(row(pages[0], 1, 2) == std::vector<int>{2, 0, 2});
  CHECK(row(pages[0], 2, 2) == std::vector<int>{1, 0, 1});
  CHECK(obstruction_scan(*b, 0).verdict == ScanVerdict::Obstructed);
  CHECK(obstruction_scan(*b, 1).verdict == ScanVerdict::Obstructed);
  check_structure(*b);
}

TEST_CASE("split sums degenerate") {
  auto x = share(boundary_simplex(3));
  auto q = constant_sheaf(full_selection(x), 0);
  auto sum = direct_sum(q, shift(q, -1));
  CHECK(obstruction_scan(*sum, 0).verdict == ScanVerdict::Clear);
  auto trivial = sphere_bundle_pushforward({x, 1, coboundary_cocycle(*x, 2, {{"1,2", Rational(1)}})});
  auto scan = obstruction_scan(*trivial, 0);
  CHECK(scan.verdict == ScanVerdict::Clear);
  check_structure(*trivial);
}
