#include <benchmark/benchmark.h>

#include <numeric>

#include "mmtsp/construct.hpp"
#include "mmtsp/instgen.hpp"
#include "mmtsp/neighborhoods.hpp"
#include "mmtsp/solver.hpp"
#include "mmtsp/tourkit.hpp"

using namespace mmtsp;

namespace {

Instance make(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  const BaseInstance base = random_base_instance("bench", n, k, rng);
  const std::vector<double> speeds = assign_speeds(k, rng);
  std::vector<VehicleSpec> v;
  for (int i = 0; i < k; ++i) v.push_back({base.depots[static_cast<size_t>(i)], speeds[static_cast<size_t>(i)], {}});
  return Instance(base.name, base.targets, v);
}

void BM_OptimizeTour(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = make(n, 1, 11);
  std::vector<TargetId> ids(static_cast<size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  const Tour start = make_tour(inst, 0, ids);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_tour(inst, start));
}
BENCHMARK(BM_OptimizeTour)->Arg(25)->Arg(50)->Arg(100);

void BM_Construct(benchmark::State& state) {
  const Instance inst = make(static_cast<int>(state.range(0)), 10, 12);
  const auto method = static_cast<ConstructionMethod>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(construct(inst, method));
}
BENCHMARK(BM_Construct)->Args({100, 0})->Args({100, 1});

void BM_LocalSearch(benchmark::State& state) {
  const Instance inst = make(100, 10, 13);
  const SolverConfig cfg;
  const Solution start = construct(inst, cfg.construction);
  for (auto _ : state) benchmark::DoNotOptimize(local_search(start, inst, cfg));
}
BENCHMARK(BM_LocalSearch)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const Instance inst = make(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 14);
  SolverConfig cfg;
  cfg.runs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, cfg));
}
BENCHMARK(BM_Solve)->Args({100, 10})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
