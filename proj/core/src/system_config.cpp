#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "stbc/system_config.hpp"

namespace stbc {

void SystemConfig::validate() const {
  if (M < 1 || N < 1 || K < 1 || L < 1)
    throw std::invalid_argument("SystemConfig: M, N, K, L must all be >= 1");
  if (!std::isfinite(R) || R <= 0.0)
    throw std::invalid_argument("SystemConfig: rate R must be finite and > 0");
  if (!std::isfinite(P) || P <= 0.0)
    throw std::invalid_argument("SystemConfig: power P must be finite and > 0");
}

std::string SystemConfig::slug() const {
  char buf[96];
  if (R == std::floor(R) && std::fabs(R) < 1e6) {
    std::snprintf(buf, sizeof(buf), "M%dN%dK%dL%dR%d", M, N, K, L,
                  static_cast<int>(R));
  } else {
    std::snprintf(buf, sizeof(buf), "M%dN%dK%dL%dR%g", M, N, K, L, R);
  }
  return buf;
}

}  // namespace stbc
