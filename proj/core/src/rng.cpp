#include <cmath>

#include "stbc/rng.hpp"

namespace stbc {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix64(mix64(seed) ^ mix64(salt + 0x632BE59BD9B4E019ULL));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(mix_seed(seed, stream_id)) {}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::exponential() {
  // 1 - uniform() lies in (0, 1]; log1p keeps precision for small arguments.
  return -std::log1p(-uniform());
}

void RngStream::gaussian_pair(double& g0, double& g1) {
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  g0 = u * factor;
  g1 = v * factor;
}

std::complex<double> RngStream::complex_gaussian() {
  double g0, g1;
  gaussian_pair(g0, g1);
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  return {g0 * kInvSqrt2, g1 * kInvSqrt2};
}

int RngStream::uniform_index(int n) {
  const int idx = static_cast<int>(uniform() * n);
  return idx >= n ? n - 1 : idx;
}

}  // namespace stbc
