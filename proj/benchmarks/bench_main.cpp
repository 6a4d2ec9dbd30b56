#include <ccl/identities.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace ccl;

RootSystem root_system(const char* spec) {
  BuildOptions bo;
  bo.enable_h4 = true;
  return build_root_system(GroupType::parse(spec), bo);
}

void BM_BuildRootSystem(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(root_system("H4"));
}
BENCHMARK(BM_BuildRootSystem)->Unit(benchmark::kMillisecond);

void BM_EnumerateF4(benchmark::State& state) {
  const auto rs = root_system("F4");
  for (auto _ : state) benchmark::DoNotOptimize(Group::enumerate(rs).order());
}
BENCHMARK(BM_EnumerateF4)->Unit(benchmark::kMillisecond);

void BM_EnumerateH4(benchmark::State& state) {
  const auto rs = root_system("H4");
  for (auto _ : state) benchmark::DoNotOptimize(Group::enumerate(rs).order());
}
BENCHMARK(BM_EnumerateH4)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_SubspaceOrbitsF4(benchmark::State& state) {
  const auto rs = root_system("F4");
  const auto g = Group::enumerate(rs);
  for (auto _ : state) benchmark::DoNotOptimize(subspace_orbits(rs, g, 2).size());
}
BENCHMARK(BM_SubspaceOrbitsF4)->Unit(benchmark::kMillisecond);

void BM_MeasureGirard(benchmark::State& state) {
  const auto c = dual(chamber(root_system("H3")));
  for (auto _ : state) benchmark::DoNotOptimize(measure(c).value);
}
BENCHMARK(BM_MeasureGirard);

// Samples per second of the Monte Carlo path on a 4-dimensional cone.
void BM_MonteCarloF4Dual(benchmark::State& state) {
  const auto c = dual(chamber(root_system("F4")));
  McConfig mc;
  mc.samples = state.range(0);
  mc.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(measure(c, mc).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloF4Dual)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
