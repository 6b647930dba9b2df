// Simulator throughput: per-trial cost is what decides whether deep-tail
// SER points (1e8+ trials) are reachable, so track it per configuration.

#include <benchmark/benchmark.h>

#include "stbc/beamforming.hpp"
#include "stbc/channel.hpp"
#include "stbc/rng.hpp"
#include "stbc/simulate.hpp"

namespace {

stbc::SystemConfig sim_cfg(int M, int N, double R) {
  stbc::SystemConfig cfg;
  cfg.M = M;
  cfg.N = N;
  cfg.K = 1;
  cfg.L = 1;
  cfg.R = R;
  cfg.P = 10.0;
  return cfg;
}

void BM_Ser2x1Bpsk(benchmark::State& state) {
  const auto cfg = sim_cfg(2, 1, 1.0);
  const auto cons = stbc::Constellation::bpsk();
  const long long trials = state.range(0);
  stbc::SerOptions opt;
  opt.trials = trials;
  opt.seed = 3;
  opt.workers = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(stbc::estimate_ser(cfg, cons, opt).ser);
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_Ser2x1Bpsk)->Arg(200000)->Unit(benchmark::kMillisecond);

void BM_Ser2x2Qpsk(benchmark::State& state) {
  const auto cfg = sim_cfg(2, 2, 2.0);
  const auto cons = stbc::Constellation::qpsk();
  const long long trials = state.range(0);
  stbc::SerOptions opt;
  opt.trials = trials;
  opt.seed = 3;
  opt.workers = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(stbc::estimate_ser(cfg, cons, opt).ser);
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_Ser2x2Qpsk)->Arg(200000)->Unit(benchmark::kMillisecond);

void BM_PrincipalSigma2x2(benchmark::State& state) {
  stbc::RngStream rng(17, 0);
  stbc::ComplexMatrix h(2, 2);
  stbc::BeamformWorkspace ws;
  for (auto _ : state) {
    for (auto& z : h.data) z = rng.complex_gaussian();
    benchmark::DoNotOptimize(stbc::principal_sigma(h, ws));
  }
}
BENCHMARK(BM_PrincipalSigma2x2);

void BM_ChannelDraw2x2(benchmark::State& state) {
  stbc::RngStream rng(17, 0);
  stbc::ChannelRealization ch;
  for (auto _ : state) {
    stbc::sample_channel_into(ch, 2, 2, 1, rng);
    benchmark::DoNotOptimize(ch.trace);
  }
}
BENCHMARK(BM_ChannelDraw2x2);

}  // namespace
