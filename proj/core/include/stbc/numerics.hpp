#pragma once

#include <functional>

#include "stbc/errors.hpp"

namespace stbc {

// Accuracy target for adaptive routines. Convergence is declared when the
// estimated absolute error drops below max(abs, rel * |estimate|).
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-300;
};

// Closed interval [lo, hi]. Used both as an integration range and as a dB
// window for slope fits.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Natural log of the Gamma function for x > 0 (Lanczos approximation).
// Throws std::domain_error for non-positive or non-finite arguments.
double log_gamma(double x);

// Regularized lower incomplete gamma P(n, x) = gamma(n, x) / Gamma(n),
// i.e. the CDF of a Gamma(n, 1) variate at x. Requires n > 0, x >= 0.
double gamma_p(double n, double x);

// Regularized upper incomplete gamma Q(n, x) = 1 - P(n, x); the upper tail
// of a Gamma(n, 1) variate. Each tail is computed directly in its own
// convergent regime (series below n + 1, continued fraction above), so tiny
// tails keep full relative accuracy instead of cancelling against 1.
double gamma_q(double n, double x);

// Adaptive Gauss-Kronrod (G7/K15) quadrature of f over iv. Segments are
// bisected worst-error-first until the accumulated error estimate meets tol
// or the segment budget is exhausted, in which case a NumericError carrying
// the best estimate and its error bound is thrown.
double integrate(const std::function<double(double)>& f, Interval iv,
                 Tolerance tol = {}, int max_segments = 20000);

}  // namespace stbc
