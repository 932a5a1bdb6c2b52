// Serial reference vs OpenMP scan over the claim grid.
//   ./bench_scan --benchmark_counters_tabular=true

#include "wrlat/scan.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

namespace {

wrlat::GridSpec claim_grid(int w, int h) {
  wrlat::GridSpec g;
  g.kind = wrlat::GridKind::AnchoredAtHexagonal;
  g.width = w;
  g.height = h;
  return g;
}

void run(benchmark::State& state, wrlat::Execution exec, wrlat::ScanTarget target) {
  const auto g = claim_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(wrlat::scan_grid(g, target, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
  state.counters["threads"] = exec == wrlat::Execution::Serial ? 1 : omp_get_max_threads();
}

void BM_ProductSerial(benchmark::State& s) { run(s, wrlat::Execution::Serial, wrlat::ScanTarget::ProductWithHexagonal); }
void BM_ProductParallel(benchmark::State& s) {
  run(s, wrlat::Execution::Parallel, wrlat::ScanTarget::ProductWithHexagonal);
}
void BM_PlaneSerial(benchmark::State& s) { run(s, wrlat::Execution::Serial, wrlat::ScanTarget::SingleFactor); }
void BM_PlaneParallel(benchmark::State& s) { run(s, wrlat::Execution::Parallel, wrlat::ScanTarget::SingleFactor); }

}  // namespace

BENCHMARK(BM_ProductSerial)->Args({50, 30})->Args({200, 120})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductParallel)->Args({50, 30})->Args({200, 120})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PlaneSerial)->Args({100, 50})->Args({400, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlaneParallel)->Args({100, 50})->Args({400, 200})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
