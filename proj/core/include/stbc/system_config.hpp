#pragma once

#include <string>

namespace stbc {

// One operating point of a MIMO block-fading link: M transmit antennas,
// N receive antennas, K independent fading blocks per codeword, L symbol
// periods per block, target rate R (bits per channel use) and total transmit
// power budget P (linear scale; the noise at each receive antenna has unit
// variance, so P doubles as SNR).
struct SystemConfig {
  int M = 1;
  int N = 1;
  int K = 1;
  int L = 1;
  double R = 1.0;
  double P = 1.0;

  // Throws std::invalid_argument if any field is outside its domain.
  void validate() const;

  // Codeword dimensions that recur throughout the bound formulas.
  int nlk() const { return N * L * K; }
  int mnk() const { return M * N * K; }

  // Compact identifier such as "M2N1K1L1R1", used for default curve labels.
  std::string slug() const;
};

}  // namespace stbc
