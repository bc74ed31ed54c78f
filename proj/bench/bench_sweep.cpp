#include <benchmark/benchmark.h>

#include <bhdpc/dpc.hpp>
#include <bhdpc/hampath.hpp>
#include <bhdpc/oracle.hpp>
#include <bhdpc/sweep.hpp>

namespace {

using namespace bhdpc;

void BM_SolveSweep(benchmark::State& state, Execution execution) {
  const int n = static_cast<int>(state.range(0));
  const auto instances = random_instances(n, 42, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto result = run_solve_sweep(instances, execution);
    if (result.failed() != 0) state.SkipWithError("solve failed");
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(instances.size()));
}
BENCHMARK_CAPTURE(BM_SolveSweep, serial, Execution::kSerial)->Args({3, 200})->Args({4, 20})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveSweep, parallel, Execution::kParallel)->Args({3, 200})->Args({4, 20})
    ->Unit(benchmark::kMillisecond);

void BM_OracleSweepN2(benchmark::State& state, Execution execution) {
  const auto instances = all_instances_n2();
  for (auto _ : state) {
    auto result = run_oracle_sweep(instances, execution);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK_CAPTURE(BM_OracleSweepN2, serial, Execution::kSerial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_OracleSweepN2, parallel, Execution::kParallel)->Unit(benchmark::kMillisecond);

void BM_HamiltonianPath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BalancedHypercube cube(n);
  const Vertex u = cube.vertex(0);
  const Vertex v = cube.vertex(cube.vertex_count() - 1);
  for (auto _ : state) benchmark::DoNotOptimize(hamiltonian_path(cube, u, v));
}
BENCHMARK(BM_HamiltonianPath)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
