#pragma once

#include <complex>
#include <string>
#include <vector>

namespace stbc {

// A unit-average-energy symbol alphabet. bits_per_symbol is log2 of the
// point count, so a constellation carries rate R = bits_per_symbol when one
// symbol occupies one channel use.
struct Constellation {
  std::string name;
  std::vector<std::complex<double>> points;
  int bits_per_symbol = 0;

  static Constellation bpsk();   // {+1, -1}
  static Constellation qpsk();   // {(+-1 +-i)/sqrt(2)}
  static Constellation qam8();   // rectangular 4x2, scaled to unit energy
  // Lookup by name ("bpsk", "qpsk", "8qam"); throws std::invalid_argument.
  static Constellation from_name(const std::string& name);

  // Checks unit mean energy, distinct points, power-of-two size.
  void validate() const;
};

}  // namespace stbc
