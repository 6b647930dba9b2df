#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace stbc {

// Thrown when an iterative numeric routine fails to converge within its
// budget. Carries the best estimate produced so far and a bound on its error
// so callers can decide whether the partial result is still usable.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what,
                        double best_estimate = std::numeric_limits<double>::quiet_NaN(),
                        double error_bound = std::numeric_limits<double>::infinity())
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_bound_(error_bound) {}

  double best_estimate() const { return best_estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

}  // namespace stbc
