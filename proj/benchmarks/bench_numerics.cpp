// Microbenchmarks for the numeric kernels on the hot paths: the chi-square
// tails dominate the Monte Carlo oracle, the quadrature dominates bound
// sweeps over dense SNR grids.

#include <benchmark/benchmark.h>

#include <cmath>

#include "stbc/bounds.hpp"
#include "stbc/numerics.hpp"
#include "stbc/system_config.hpp"

namespace {

stbc::SystemConfig reference_cfg(double P) {
  stbc::SystemConfig cfg;
  cfg.M = 2;
  cfg.N = 1;
  cfg.K = 1;
  cfg.L = 1;
  cfg.R = 1.0;
  cfg.P = P;
  return cfg;
}

void BM_GammaQ_SmallIntegerShape(benchmark::State& state) {
  // The Monte Carlo oracle path: integer n, Poisson partial sum.
  double x = 0.9;
  for (auto _ : state) {
    x = x < 600.0 ? x + 1e-4 : 0.9;
    benchmark::DoNotOptimize(stbc::gamma_q(4.0, x));
  }
}
BENCHMARK(BM_GammaQ_SmallIntegerShape);

void BM_GammaQ_SeriesRegime(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    x = x < 90.0 ? x + 1e-4 : 0.5;
    benchmark::DoNotOptimize(stbc::gamma_q(100.5, x));
  }
}
BENCHMARK(BM_GammaQ_SeriesRegime);

void BM_GammaQ_ContinuedFraction(benchmark::State& state) {
  double x = 130.0;
  for (auto _ : state) {
    x = x < 400.0 ? x + 1e-4 : 130.0;
    benchmark::DoNotOptimize(stbc::gamma_q(100.5, x));
  }
}
BENCHMARK(BM_GammaQ_ContinuedFraction);

void BM_LogGamma(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    x = x < 5000.0 ? x + 1e-3 : 0.5;
    benchmark::DoNotOptimize(stbc::log_gamma(x));
  }
}
BENCHMARK(BM_LogGamma);

void BM_IntegralBound(benchmark::State& state) {
  const stbc::SystemConfig cfg = reference_cfg(std::pow(10.0, state.range(0) / 10.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(stbc::integral_lowerbound(cfg).value);
}
BENCHMARK(BM_IntegralBound)->Arg(0)->Arg(20)->Arg(60);

void BM_ClosedFormBounds(benchmark::State& state) {
  const stbc::SystemConfig cfg = reference_cfg(100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stbc::bound1(cfg).value);
    benchmark::DoNotOptimize(stbc::bound2(cfg).value);
  }
}
BENCHMARK(BM_ClosedFormBounds);

void BM_McOracle(benchmark::State& state) {
  const stbc::SystemConfig cfg = reference_cfg(10.0);
  const long long trials = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(stbc::mc_oracle_lowerbound(cfg, trials, 7, 1).value);
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_McOracle)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
