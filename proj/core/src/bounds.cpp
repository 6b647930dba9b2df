#include <cmath>
#include <stdexcept>
#include <string>

#include "stbc/bounds.hpp"
#include "stbc/parallel.hpp"
#include "stbc/rng.hpp"

namespace stbc {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// log(u^p - v^p) for 0 < v < u, computed without overflow as
// p*log(u) + log(1 - (v/u)^p).
double log_pow_diff(double u, double v, double p) {
  const double lead = p * std::log(u);
  return lead + std::log1p(-std::exp(p * (std::log(v) - std::log(u))));
}

}  // namespace

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::conditional: return "conditional";
    case BoundKind::integral: return "integral";
    case BoundKind::bound1: return "bound1";
    case BoundKind::bound2: return "bound2";
    case BoundKind::mc_oracle: return "mc_oracle";
  }
  return "unknown";
}

SphereGeometry geometry_for(const SystemConfig& cfg) {
  cfg.validate();
  const double lk = static_cast<double>(cfg.L) * cfg.K;
  // c = 2^(R/2N) - 1 sets how much of the signal sphere a codeword's noise
  // ball may claim; expm1 keeps it accurate for small rates.
  const double c = std::expm1(cfg.R * kLn2 / (2.0 * cfg.N));
  const double rate_shrink = std::exp2(-cfg.R / cfg.N);  // 2^(-R/N)
  const double sqrt2_over_c = std::sqrt(2.0) / c;

  SphereGeometry g;
  g.a = lk * rate_shrink * (sqrt2_over_c + 1.0) * (sqrt2_over_c + 1.0);
  g.b = 2.0 * lk / (c * c);
  g.delta = 2.0 * cfg.P / (cfg.N * c * c);
  return g;
}

BoundResult conditional_lowerbound(const SystemConfig& cfg, double h) {
  if (!std::isfinite(h) || h < 0.0)
    throw std::invalid_argument("conditional_lowerbound: trace h must be finite and >= 0");
  SphereGeometry g = geometry_for(cfg);
  const double nlk = cfg.nlk();

  // Realized sphere radii for this channel: the noise-ball radius NLK*delta
  // and the packing radius r_o^2, both linear in h. Algebraically
  // r_o^2 = a*P*h and NLK*delta = b*P*h; the radius is evaluated from its
  // defining expression and the identity is covered by tests.
  const double delta_h = g.delta * h;
  const double r_o_sq = nlk * std::exp2(-cfg.R / cfg.N) *
                        std::pow(std::sqrt(delta_h) + std::sqrt(cfg.P * h / cfg.N), 2);
  const double upper = nlk * delta_h;
  g.r_o_sq = r_o_sq;

  BoundResult res;
  res.kind = BoundKind::conditional;
  res.geometry = g;
  if (h == 0.0) {
    res.value = 0.0;
    return res;
  }
  const double raw = gamma_q(nlk, r_o_sq) - gamma_q(nlk, upper);
  if (raw < 0.0) {
    // Both tails are equal to rounding precision; report the clamp.
    res.value = 0.0;
    res.clamped = true;
  } else {
    res.value = clamp01(raw);
  }
  return res;
}

BoundResult integral_lowerbound(const SystemConfig& cfg, Tolerance tol) {
  SphereGeometry g = geometry_for(cfg);
  const double nlk = cfg.nlk();
  const double mnk = cfg.mnk();
  const double P = cfg.P;

  // Averaging the conditional bound over the chi-square channel trace
  // collapses to this kernel on [a, b] (substitution X = chi-square argument
  // per unit P*h). Evaluated in the log domain to dodge under/overflow.
  auto kernel = [&](double x) {
    return std::exp((nlk - 1.0) * std::log(x) -
                    (mnk + nlk) * std::log1p(P * x));
  };

  double integral;
  try {
    integral = integrate(kernel, {g.a, g.b}, tol);
  } catch (const NumericError& e) {
    throw NumericError("integral_lowerbound: quadrature failed for " + cfg.slug() +
                           " at P=" + std::to_string(P) + ": " + e.what(),
                       e.best_estimate(), e.error_bound());
  }

  const double log_pref = nlk * std::log(P) + log_gamma(nlk + mnk) -
                          log_gamma(nlk) - log_gamma(mnk);
  BoundResult res;
  res.kind = BoundKind::integral;
  res.geometry = g;
  res.value = integral > 0.0 ? clamp01(std::exp(log_pref + std::log(integral))) : 0.0;
  return res;
}

BoundResult bound1(const SystemConfig& cfg) {
  SphereGeometry g = geometry_for(cfg);
  const double nlk = cfg.nlk();
  const double mnk = cfg.mnk();
  const double P = cfg.P;

  // Freeze the (1+Px)^-(MNK+NLK) factor of the integral kernel at x = b and
  // integrate x^(NLK-1) exactly.
  const double log_val = log_gamma(nlk + mnk) - log_gamma(nlk + 1.0) -
                         log_gamma(mnk) + nlk * std::log(P) -
                         (mnk + nlk) * std::log1p(P * g.b) +
                         log_pow_diff(g.b, g.a, nlk);

  BoundResult res;
  res.kind = BoundKind::bound1;
  res.geometry = g;
  res.value = clamp01(std::exp(log_val));
  return res;
}

BoundResult bound2(const SystemConfig& cfg) {
  SphereGeometry g = geometry_for(cfg);
  const double nlk = cfg.nlk();
  const double mnk = cfg.mnk();
  const double P = cfg.P;
  const double order = nlk + mnk - 1.0;

  // Freeze x^(NLK-1) at x = a and integrate (1+Px)^-(MNK+NLK) exactly; the
  // antiderivative contributes Gamma(order)/(P * (order)) terms that fold
  // into the prefactor, leaving P^(NLK-1).
  const double log_tail_diff =
      -order * std::log1p(P * g.a) +
      std::log1p(-std::exp(-order * (std::log1p(P * g.b) - std::log1p(P * g.a))));
  const double log_val = log_gamma(order) - log_gamma(nlk) - log_gamma(mnk) +
                         (nlk - 1.0) * (std::log(g.a) + std::log(P)) +
                         log_tail_diff;

  BoundResult res;
  res.kind = BoundKind::bound2;
  res.geometry = g;
  res.value = clamp01(std::exp(log_val));
  return res;
}

BoundResult mc_oracle_lowerbound(const SystemConfig& cfg, long long trials,
                                 std::uint64_t seed, int workers) {
  SphereGeometry g = geometry_for(cfg);
  if (trials < 1000)
    throw std::invalid_argument("mc_oracle_lowerbound: needs trials >= 1000");

  const double nlk = cfg.nlk();
  const int mnk = cfg.mnk();
  const double aP = g.a * cfg.P;
  const double bP = g.b * cfg.P;

  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  auto partials = map_chunks<Partial>(
      trials, /*first_chunk=*/0, /*first_trial=*/0, workers,
      [&](const ChunkRange& chunk) {
        RngStream rng(seed, static_cast<std::uint64_t>(chunk.index));
        Partial p;
        for (long long t = chunk.begin; t < chunk.end; ++t) {
          // tr(H H^*) over MNK unit-variance complex entries is a sum of MNK
          // independent Exp(1) magnitudes.
          double h = 0.0;
          for (int j = 0; j < mnk; ++j) h += rng.exponential();
          const double v = gamma_q(nlk, aP * h) - gamma_q(nlk, bP * h);
          p.sum += v;
          p.sum_sq += v * v;
        }
        return p;
      });

  // Fixed-order reduction keeps the result independent of thread scheduling.
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& p : partials) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  double var = (sum_sq - sum * sum / n) / (n - 1.0);
  if (var < 0.0) var = 0.0;

  BoundResult res;
  res.kind = BoundKind::mc_oracle;
  res.geometry = g;
  res.value = clamp01(mean);
  res.mc_ci = 3.0 * std::sqrt(var / n);
  return res;
}

double diversity_slope(const Curve& curve, Interval window_db) {
  if (!(window_db.lo < window_db.hi))
    throw std::invalid_argument("diversity_slope: window must satisfy lo < hi");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& p : curve.points) {
    if (p.snr_db < window_db.lo || p.snr_db > window_db.hi) continue;
    if (!(p.value > 0.0))
      throw std::invalid_argument(
          "diversity_slope: curve '" + curve.label +
          "' has a non-positive value inside the window (snr_db=" +
          std::to_string(p.snr_db) + ")");
    const double x = p.snr_db / 10.0;       // log10(P)
    const double y = -std::log10(p.value);  // decades of error probability
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3)
    throw std::invalid_argument("diversity_slope: needs at least 3 points in the window, found " +
                                std::to_string(n));
  const double denom = sxx - sx * sx / n;
  if (!(denom > 0.0))
    throw std::invalid_argument("diversity_slope: window points are degenerate");
  return (sxy - sx * sy / n) / denom;
}

}  // namespace stbc
