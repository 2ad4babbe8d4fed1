#include "doctest.h"
#include "fixtures.hpp"
#include "isc/errors.hpp"
#include "isc/io.hpp"
#include "isc/models.hpp"
#include "isc/obstruction.hpp"

using namespace isc;
using fixtures::betti;
using fixtures::share;

namespace {

bool same_space(const StratifiedPoset& a, const StratifiedPoset& b) {
  if (a.size() != b.size() || a.dim() != b.dim() || a.edges().size() != b.edges().size()) return false;
  for (int c = 0; c < a.size(); ++c) {
    int o = b.index(a.cell(c).id);
    if (a.cell(c).dim != b.cell(o).dim || a.codim(c) != b.codim(o)) return false;
  }
  return true;
}

bool same_complex(const SheafComplex& a, const SheafComplex& b) {
  if (a.lo != b.lo || a.hi() != b.hi() || a.base.cells != b.base.cells) return false;
  for (int n = a.lo; n <= a.hi(); ++n) {
    for (int c : a.base.cells)
      if (a.dim(n, c) != b.dim(n, c) || !(a.diff(n, c) == b.diff(n, c))) return false;
    for (std::size_t e = 0; e < a.base.parent->edges().size(); ++e)
      if (a.terms[n - a.lo].edge_in_base(static_cast<int>(e)) && !(a.res(n, e) == b.res(n, e))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("spaces survive a JSON round trip") {
  for (auto p : {boundary_simplex(3), cone_space(cycle_graph(3)), cp2_9()}) {
    auto back = space_from_json(space_to_json(p));
    CHECK(same_space(p, back));
    CHECK(space_to_json(back) == space_to_json(p));
  }
}

TEST_CASE("sheaf complexes survive a JSON round trip") {
  auto x = share(boundary_simplex(3));
  auto hopf = sphere_bundle_pushforward({x, 1, generator_cocycle(*x, 2)});
  auto back = sheaf_from_json(sheaf_to_json(*hopf, "s2.json"), x);
  CHECK(same_complex(*hopf, *back));
  CHECK(hypercohomology(*back) == hypercohomology(*hopf));

  // rational restriction maps on a graph, including a cell with zero stalk
  auto c = share(cycle_graph(3));
  auto q = constant_sheaf(full_selection(c), 0);
  SheafComplex k = *q;
  k.terms[0].res[0](0, 0) = Rational(-3, 7);
  k.terms[0].res[1](0, 0) = Rational(1, 2);
  k.terms[0].dims[0] = 0;
  for (int e : c->up_edges(0)) k.terms[0].res[e] = RatMatrix(k.terms[0].dims[c->edges()[e].coface], 0);
  k.d[0][0] = RatMatrix(0, 0);
  auto kp = make_complex(std::move(k));
  auto kb = sheaf_from_json(sheaf_to_json(*kp, "circle.json"), c);
  CHECK(same_complex(*kp, *kb));
  CHECK(kb->base.cells.size() == static_cast<std::size_t>(c->size()));
}

TEST_CASE("malformed input is rejected as invalid") {
  CHECK_THROWS_AS(space_from_json("{"), InvalidInput);
  CHECK_THROWS_AS(space_from_json("{\"cells\": 3}"), InvalidInput);
  auto x = share(boundary_simplex(3));
  auto q = constant_sheaf(full_selection(x), 0);
  std::string good = sheaf_to_json(*q, "s2.json");
  CHECK_NOTHROW(sheaf_from_json(good, x));

  auto bad_cell = good;
  bad_cell.replace(bad_cell.find("\"stalks\""), 0, "\"stalks\": {\"nope\": 1}, \"_\": ");
  CHECK_THROWS_AS(sheaf_from_json(bad_cell, x), InvalidInput);

  // a restriction map that breaks functoriality
  SheafComplex twisted = *q;
  twisted.terms[0].res[0](0, 0) = Rational(2);
  std::string bad = sheaf_to_json(twisted, "s2.json");
  CHECK_THROWS_AS(sheaf_from_json(bad, x), InvalidInput);

  CHECK_THROWS_AS(load_space("/nonexistent/space.json"), InvalidInput);
}

TEST_CASE("ascii pages list rows from the top") {
  auto x = share(boundary_simplex(3));
  auto hopf = sphere_bundle_pushforward({x, 1, generator_cocycle(*x, 2)});
  SpectralSequence ss(*hopf);
  std::string e2 = ascii_page(ss.page(2));
  CHECK(e2.find("q=1  | 1 0 1") < e2.find("q=0  | 1 0 1"));
  CHECK(e2.find("d_2^{0,1} rank 1") != std::string::npos);
  CHECK(ascii_page(ss.page(3)).find("rank") == std::string::npos);
}
