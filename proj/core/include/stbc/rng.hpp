#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace stbc {

// Bit-mixes a 64-bit value (SplitMix64 finalizer). Used to whiten seeds and
// to derive independent sub-seeds: mix_seed(seed, salt) gives a stream seed
// that is decorrelated from every other salt.
std::uint64_t mix64(std::uint64_t z);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// A deterministic random stream identified by (seed, stream_id). Distinct
// stream ids on the same seed yield statistically independent sequences, so
// Monte Carlo work can be split into chunks that each own a stream: the
// sampled values then do not depend on how chunks are scheduled over threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();

  // Exponential(1) via inversion; never takes log of zero.
  double exponential();

  // A pair of independent N(0, 1) draws by the Marsaglia polar method
  // (rejection; no trigonometric calls).
  void gaussian_pair(double& g0, double& g1);

  // Circularly-symmetric complex normal CN(0, 1): real and imaginary parts
  // are independent N(0, 1/2).
  std::complex<double> complex_gaussian();

  // Uniform integer in [0, n), n >= 1.
  int uniform_index(int n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace stbc
