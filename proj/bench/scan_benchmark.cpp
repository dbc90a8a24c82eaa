// Serial reference scan versus the OpenMP scan of the exit density, on the
// Table 1 configurations. Run with PHASETIME_THREADS unset to use all cores.

#include <benchmark/benchmark.h>

#include "tunnel/peakfind.hpp"

namespace {

using namespace tunnel;

std::vector<double> grid_for(const DimensionlessParams& params, int points) {
  PeakSearchConfig config = default_search_config(params);
  config.coarse_points = points;
  return tau_grid(config);
}

void BM_DensityScanSerial(benchmark::State& state) {
  const auto params = DimensionlessParams::from_w(1.0, static_cast<double>(state.range(0)));
  const auto spec = Spectrum::standard();
  const auto taus = grid_for(params, 64);
  for (auto _ : state) benchmark::DoNotOptimize(density_scan_serial(spec, params, taus));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(taus.size()));
}

void BM_DensityScanParallel(benchmark::State& state) {
  const auto params = DimensionlessParams::from_w(1.0, static_cast<double>(state.range(0)));
  const auto spec = Spectrum::standard();
  const auto taus = grid_for(params, 64);
  for (auto _ : state) benchmark::DoNotOptimize(density_scan(spec, params, taus));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(taus.size()));
}

void BM_PeakArrival(benchmark::State& state) {
  const auto params = DimensionlessParams::from_w(1.0, static_cast<double>(state.range(0)));
  const auto spec = Spectrum::standard();
  const auto config = default_search_config(params);
  const Execution exec = state.range(1) ? Execution::parallel : Execution::serial;
  for (auto _ : state) benchmark::DoNotOptimize(peak_arrival(spec, params, config, {}, exec));
}

}  // namespace

BENCHMARK(BM_DensityScanSerial)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityScanParallel)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PeakArrival)->Args({100, 0})->Args({100, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
