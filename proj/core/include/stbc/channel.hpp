#pragma once

#include <complex>
#include <vector>

#include "stbc/rng.hpp"

namespace stbc {

using cplx = std::complex<double>;

// Minimal dense complex matrix, row-major. The channels here are at most a
// few entries on a side and live in a hot Monte Carlo loop, so this stays a
// flat buffer with inline indexing rather than a general linear-algebra type.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> data;

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}

  cplx& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  const cplx& at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

// K independent N x M fading blocks plus the total channel energy
// trace = sum_k tr(H_k H_k^*), which drives the conditional bound.
struct ChannelRealization {
  std::vector<ComplexMatrix> blocks;
  double trace = 0.0;
};

// Draws K blocks of i.i.d. CN(0, 1) entries (Rayleigh fading) from rng.
ChannelRealization sample_channel(int M, int N, int K, RngStream& rng);

// Same draw sequence, but refills `ch` in place so hot loops can reuse its
// storage; `ch` is (re)shaped as needed.
void sample_channel_into(ChannelRealization& ch, int M, int N, int K, RngStream& rng);

// One CN(0, 1) noise sample (unit total variance, split across re/im).
cplx awgn(RngStream& rng);

}  // namespace stbc
