#pragma once

#include <cstdint>

#include "stbc/beamforming.hpp"
#include "stbc/system_config.hpp"

namespace stbc {

// Outcome of a symbol-error-rate run. ci95 is the half-width of the normal
// 95% interval 1.96*sqrt(p(1-p)/trials); when the error count is 0 (or equal
// to trials) the normal width collapses, so the rule-of-three guard 3/trials
// is reported instead.
struct SerEstimate {
  long long errors = 0;
  long long trials = 0;
  double ser = 0.0;
  double ci95 = 0.0;
  std::uint64_t seed = 0;
};

struct SerOptions {
  long long trials = 1000000;  // base trial count
  std::uint64_t seed = 1;
  // When > 0, keep extending the run (in whole RNG chunks, deterministically)
  // until at least this many errors are observed or max_trials is reached.
  long long min_errors = 0;
  long long max_trials = 0;  // 0 means "no extension beyond trials"
  int workers = 0;           // 0 = hardware concurrency
  // Scales the additive noise; exists so tests can verify the detector is
  // exact when noise is switched off. Production runs leave it at 1.
  double noise_scale = 1.0;
};

// Simulates coherent SVD beamforming with ML detection over the Rayleigh
// block-fading channel of cfg (single block, one symbol per use: requires
// K = L = 1 and constellation rate equal to cfg.R). Per trial: draw a
// channel, beamform a uniformly drawn symbol along the dominant right
// singular vector at full power P, add CN(0,1) noise at the combiner output,
// detect, and count symbol errors. Deterministic for a fixed seed and
// independent of the worker count.
SerEstimate estimate_ser(const SystemConfig& cfg, const Constellation& constellation,
                         const SerOptions& opt);

SerEstimate estimate_ser(const SystemConfig& cfg, const Constellation& constellation,
                         long long trials, std::uint64_t seed);

}  // namespace stbc
