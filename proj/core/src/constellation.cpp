#include <cmath>
#include <stdexcept>

#include "stbc/constellation.hpp"

namespace stbc {

Constellation Constellation::bpsk() {
  return {"bpsk", {{1.0, 0.0}, {-1.0, 0.0}}, 1};
}

Constellation Constellation::qpsk() {
  constexpr double s = 0.70710678118654752440;  // 1/sqrt(2)
  return {"qpsk", {{s, s}, {-s, s}, {-s, -s}, {s, -s}}, 2};
}

Constellation Constellation::qam8() {
  // In-phase levels {-3,-1,1,3}, quadrature {-1,1}; raw mean energy is
  // (9+1+1+9)/4 + 1 = 6, so scale by 1/sqrt(6) for unit average energy.
  const double s = 1.0 / std::sqrt(6.0);
  std::vector<std::complex<double>> pts;
  for (double q : {1.0, -1.0})
    for (double i : {-3.0, -1.0, 1.0, 3.0}) pts.push_back({i * s, q * s});
  return {"8qam", pts, 3};
}

Constellation Constellation::from_name(const std::string& name) {
  if (name == "bpsk") return bpsk();
  if (name == "qpsk") return qpsk();
  if (name == "8qam") return qam8();
  throw std::invalid_argument("Constellation::from_name: unknown constellation '" + name +
                              "' (expected bpsk, qpsk or 8qam)");
}

void Constellation::validate() const {
  const std::size_t n = points.size();
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("Constellation: point count must be a power of two >= 2");
  if ((1u << bits_per_symbol) != n)
    throw std::invalid_argument("Constellation: bits_per_symbol inconsistent with point count");
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    energy += std::norm(points[i]);
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(points[i] - points[j]) < 1e-12)
        throw std::invalid_argument("Constellation: duplicate points");
  }
  if (std::fabs(energy / n - 1.0) > 1e-12)
    throw std::invalid_argument("Constellation: mean symbol energy must be 1");
}

}  // namespace stbc
