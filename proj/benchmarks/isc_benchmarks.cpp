#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "isc/bettidual.hpp"
#include "isc/istower.hpp"
#include "isc/matrix.hpp"
#include "isc/models.hpp"
#include "isc/obstruction.hpp"

using namespace isc;

namespace {

PosetPtr share(StratifiedPoset p) { return std::make_shared<const StratifiedPoset>(std::move(p)); }

void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> v(-5, 5);
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(v(rng));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(16)->Arg(32)->Arg(64);

void BM_HypercohomologyTorus(benchmark::State& state) {
  auto x = share(torus7());
  auto q = constant_sheaf(full_selection(x), 0);
  for (auto _ : state) benchmark::DoNotOptimize(hypercohomology(*q));
}
BENCHMARK(BM_HypercohomologyTorus)->Unit(benchmark::kMillisecond);

void BM_HopfScan(benchmark::State& state) {
  auto x = share(boundary_simplex(3));
  auto b = sphere_bundle_pushforward({x, 1, generator_cocycle(*x, 2)});
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_scan(*b, 0));
}
BENCHMARK(BM_HopfScan)->Unit(benchmark::kMillisecond);

void BM_CP2Scan(benchmark::State& state) {
  auto x = share(cp2_9());
  auto b = sphere_bundle_pushforward({x, 3, generator_cocycle(*x, 4)});
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_scan(*b, 2));
}
BENCHMARK(BM_CP2Scan)->Unit(benchmark::kMillisecond);

void BM_ICCone(benchmark::State& state) {
  auto x = share(cone_space(torus7()));
  auto p = standard_perversity("total", 3);
  for (auto _ : state) benchmark::DoNotOptimize(build_ic(x, p));
}
BENCHMARK(BM_ICCone)->Unit(benchmark::kMillisecond);

void BM_ISTowerS1SigmaT2(benchmark::State& state) {
  auto x = share(product_space(cycle_graph(3), suspension(torus7())));
  auto p = standard_perversity("lower-middle", 4);
  for (auto _ : state) benchmark::DoNotOptimize(build_is(x, p, {{}, 1}));
}
BENCHMARK(BM_ISTowerS1SigmaT2)->Unit(benchmark::kMillisecond);

void BM_GenericBetti(benchmark::State& state) {
  auto x = share(product_space(cycle_graph(3), suspension(torus7())));
  auto p = standard_perversity("lower-middle", 4);
  for (auto _ : state) benchmark::DoNotOptimize(generic_betti(x, p, static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_GenericBetti)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  set_data_dir(ISC_BENCH_DATA_DIR);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
