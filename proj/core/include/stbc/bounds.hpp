#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "stbc/curve.hpp"
#include "stbc/numerics.hpp"
#include "stbc/system_config.hpp"

namespace stbc {

// Geometry of the sphere-packing argument for a given operating point:
// 2R/N-bit codewords of NLK complex dimensions must fit inside a ball whose
// radius is set by the power budget, each surrounded by a noise ball.
// The error event is captured by the chi-square mass of the received-noise
// radius landing between r_o^2 and NLK*delta; both ends scale linearly with
// the channel trace h = tr(H H^*), with slopes a*P and b*P respectively.
struct SphereGeometry {
  double a = 0.0;      // lower chi-square argument per unit P*h
  double b = 0.0;      // upper chi-square argument per unit P*h
  double delta = 0.0;  // noise-sphere control parameter per unit h
  // Squared packing radius; only meaningful once a channel realization fixes
  // h, so it is populated by the conditional bound and empty otherwise.
  std::optional<double> r_o_sq;
};

enum class BoundKind { conditional, integral, bound1, bound2, mc_oracle };

std::string to_string(BoundKind kind);

struct BoundResult {
  BoundKind kind = BoundKind::integral;
  double value = 0.0;
  SphereGeometry geometry;
  // Half-width of the 3-sigma confidence interval; Monte Carlo results only.
  std::optional<double> mc_ci;
  // Set when a tiny negative cancellation residue was clamped to zero.
  bool clamped = false;
};

// Packing geometry implied by cfg. Throws std::invalid_argument on a bad cfg.
SphereGeometry geometry_for(const SystemConfig& cfg);

// Lower bound on codeword error probability conditioned on a channel with
// trace h = tr(H H^*): the chi-square(2NLK) mass between the packing radius
// and the noise-sphere radius. h = 0 gives exactly zero; tiny negative
// rounding residue is clamped to zero with the clamp reported.
BoundResult conditional_lowerbound(const SystemConfig& cfg, double h);

// Expectation of the conditional bound over the Rayleigh-fading channel
// distribution, reduced to a single smooth integral over [a, b] and evaluated
// by adaptive quadrature. This is the tightest of the closed-form family.
BoundResult integral_lowerbound(const SystemConfig& cfg, Tolerance tol = {});

// Closed-form relaxations of the integral bound: bound1 freezes the
// (1+Px)^-(MNK+NLK) factor at x = b, bound2 freezes x^(NLK-1) at x = a.
// Both are provably <= the integral bound (bound2 meets it when NLK = 1).
BoundResult bound1(const SystemConfig& cfg);
BoundResult bound2(const SystemConfig& cfg);

// Monte Carlo estimate of E_h[conditional bound] with h ~ Gamma(MNK, 1),
// which is the defining expectation the integral bound rewrites. Serves as
// an independent cross-check of the quadrature path. Deterministic for a
// fixed seed regardless of worker count; requires trials >= 1000.
BoundResult mc_oracle_lowerbound(const SystemConfig& cfg, long long trials,
                                 std::uint64_t seed, int workers = 0);

// Least-squares slope of -log10(value) against log10(P) over the points of
// `curve` whose snr_db lies in `window_db`. Requires at least three such
// points, all with value > 0. This estimates the diversity order; for any
// scheme it cannot exceed M*N*K.
double diversity_slope(const Curve& curve, Interval window_db);

}  // namespace stbc
