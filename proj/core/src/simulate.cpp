#include <cmath>
#include <stdexcept>

#include "stbc/channel.hpp"
#include "stbc/parallel.hpp"
#include "stbc/simulate.hpp"

namespace stbc {
namespace {

// One simulated transmission. Draw order within a trial is fixed (channel
// entries, then symbol index, then noise) and must never change: it defines
// the reproducible meaning of a (seed, chunk) pair.
inline bool trial_is_error(const SystemConfig& cfg, const Constellation& cons,
                           double noise_scale, RngStream& rng,
                           ChannelRealization& ch, BeamformWorkspace& ws) {
  sample_channel_into(ch, cfg.M, cfg.N, 1, rng);
  const double sigma = principal_sigma(ch.blocks[0], ws);
  const int sent = rng.uniform_index(static_cast<int>(cons.points.size()));
  const cplx noise = awgn(rng) * noise_scale;
  // Beamforming along the dominant right singular vector turns the channel
  // into the scalar sqrt(P)*sigma; the matched-filter output sees exactly
  // this scalar channel.
  const cplx y = std::sqrt(cfg.P) * sigma * cons.points[static_cast<std::size_t>(sent)] + noise;
  return ml_detect(y, sigma, cfg.P, cons) != sent;
}

long long run_chunks(const SystemConfig& cfg, const Constellation& cons,
                     const SerOptions& opt, long long total, long long first_chunk,
                     long long first_trial) {
  auto partials = map_chunks<long long>(
      total, first_chunk, first_trial, opt.workers, [&](const ChunkRange& chunk) {
        RngStream rng(opt.seed, static_cast<std::uint64_t>(chunk.index));
        ChannelRealization ch;
        BeamformWorkspace ws;
        long long errors = 0;
        for (long long t = chunk.begin; t < chunk.end; ++t)
          errors += trial_is_error(cfg, cons, opt.noise_scale, rng, ch, ws) ? 1 : 0;
        return errors;
      });
  long long errors = 0;
  for (long long e : partials) errors += e;
  return errors;
}

}  // namespace

SerEstimate estimate_ser(const SystemConfig& cfg, const Constellation& cons,
                         const SerOptions& opt) {
  cfg.validate();
  cons.validate();
  if (cfg.K != 1 || cfg.L != 1)
    throw std::invalid_argument("estimate_ser: simulator covers K = 1, L = 1 only");
  if (std::fabs(cfg.R - cons.bits_per_symbol) > 1e-12)
    throw std::invalid_argument("estimate_ser: constellation rate " +
                                std::to_string(cons.bits_per_symbol) +
                                " does not match cfg.R");
  if (opt.trials < 1)
    throw std::invalid_argument("estimate_ser: trials must be >= 1");
  if (opt.min_errors > 0 && opt.max_trials < opt.trials)
    throw std::invalid_argument("estimate_ser: max_trials must be >= trials when min_errors is set");
  if (!(opt.noise_scale >= 0.0) || !std::isfinite(opt.noise_scale))
    throw std::invalid_argument("estimate_ser: noise_scale must be finite and >= 0");

  long long trials = opt.trials;
  long long errors = run_chunks(cfg, cons, opt, trials, 0, 0);
  // Chunk numbering continues across extension rounds, so an extended run is
  // the deterministic continuation of the base run.
  long long next_chunk = (trials + kChunkTrials - 1) / kChunkTrials;

  while (opt.min_errors > 0 && errors < opt.min_errors && trials < opt.max_trials) {
    // Size the next round from the observed rate, aiming slightly past the
    // target to avoid a long tail of tiny rounds; all inputs are
    // deterministic, so the schedule is too.
    long long round;
    if (errors == 0) {
      round = 7 * trials;
    } else {
      const double need = static_cast<double>(opt.min_errors - errors) + 10.0;
      round = static_cast<long long>(1.2 * need * static_cast<double>(trials) /
                                     static_cast<double>(errors)) + 1;
    }
    if (round > opt.max_trials - trials) round = opt.max_trials - trials;
    // Whole chunks only, so every chunk's stream is consumed from its start.
    round = ((round + kChunkTrials - 1) / kChunkTrials) * kChunkTrials;
    if (round > opt.max_trials - trials)
      round = ((opt.max_trials - trials) / kChunkTrials) * kChunkTrials;
    if (round <= 0) break;

    errors += run_chunks(cfg, cons, opt, round, next_chunk, next_chunk * kChunkTrials);
    trials += round;
    next_chunk += round / kChunkTrials;
  }

  SerEstimate est;
  est.errors = errors;
  est.trials = trials;
  est.seed = opt.seed;
  est.ser = static_cast<double>(errors) / static_cast<double>(trials);
  if (errors == 0 || errors == trials) {
    est.ci95 = 3.0 / static_cast<double>(trials);
  } else {
    const double p = est.ser;
    est.ci95 = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
  return est;
}

SerEstimate estimate_ser(const SystemConfig& cfg, const Constellation& cons,
                         long long trials, std::uint64_t seed) {
  SerOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  return estimate_ser(cfg, cons, opt);
}

}  // namespace stbc
