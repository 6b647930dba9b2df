#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stbc/system_config.hpp"

namespace stbc {

struct CurvePoint {
  double snr_db = 0.0;
  double value = 0.0;                // probability, in [0, 1]
  std::optional<double> ci;          // confidence half-width, when stochastic
                                     // (95% for sim curves, 3-sigma for mc_oracle)
};

// A named series of (SNR, probability) points produced by one bound or one
// simulation sweep. `kind` identifies the producer ("integral", "bound1",
// "bound2", "mc_oracle", "sim:bpsk", ...); `label` distinguishes sweeps.
struct Curve {
  std::string label;
  std::string kind;
  // The operating point that produced the curve (P varies along the grid).
  // Absent when the curve was parsed from a CSV file, which does not carry
  // configuration metadata.
  std::optional<SystemConfig> config;
  std::vector<CurvePoint> points;

  // Enforces: non-empty label/kind free of separators, strictly increasing
  // snr_db, values in [0, 1], non-negative ci. Throws std::invalid_argument.
  void validate() const;
};

}  // namespace stbc
