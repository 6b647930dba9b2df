#include <stdexcept>

#include "stbc/channel.hpp"

namespace stbc {

void sample_channel_into(ChannelRealization& ch, int M, int N, int K, RngStream& rng) {
  if (M < 1 || N < 1 || K < 1)
    throw std::invalid_argument("sample_channel: M, N, K must all be >= 1");
  if (static_cast<int>(ch.blocks.size()) != K) ch.blocks.resize(static_cast<std::size_t>(K));
  double trace = 0.0;
  for (auto& h : ch.blocks) {
    if (h.rows != N || h.cols != M) h = ComplexMatrix(N, M);
    for (auto& e : h.data) {
      e = rng.complex_gaussian();
      trace += std::norm(e);
    }
  }
  ch.trace = trace;
}

ChannelRealization sample_channel(int M, int N, int K, RngStream& rng) {
  ChannelRealization ch;
  sample_channel_into(ch, M, N, K, rng);
  return ch;
}

cplx awgn(RngStream& rng) { return rng.complex_gaussian(); }

}  // namespace stbc
