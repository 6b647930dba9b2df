#include <cmath>
#include <limits>
#include <stdexcept>

#include "stbc/curve.hpp"

namespace stbc {
namespace {

bool clean_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') return false;
  return true;
}

}  // namespace

void Curve::validate() const {
  if (!clean_token(label))
    throw std::invalid_argument("Curve: label must be non-empty and free of commas/quotes/newlines");
  if (!clean_token(kind))
    throw std::invalid_argument("Curve: kind must be non-empty and free of commas/quotes/newlines");
  if (config) config->validate();
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (!std::isfinite(p.snr_db) || p.snr_db <= prev)
      throw std::invalid_argument("Curve '" + label + "': snr_db must be finite and strictly increasing");
    prev = p.snr_db;
    if (!std::isfinite(p.value) || p.value < 0.0 || p.value > 1.0)
      throw std::invalid_argument("Curve '" + label + "': values must lie in [0, 1]");
    if (p.ci && (!std::isfinite(*p.ci) || *p.ci < 0.0))
      throw std::invalid_argument("Curve '" + label + "': ci must be finite and >= 0");
  }
}

}  // namespace stbc
