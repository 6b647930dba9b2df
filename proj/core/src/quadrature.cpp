#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "stbc/numerics.hpp"

namespace stbc {
namespace {

// Gauss-Kronrod 7-15 pair. Positive abscissae of the 15-point Kronrod rule;
// the odd-indexed ones are the embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
  double lo, hi;
  double estimate;  // K15 value
  double error;     // |K15 - G7|, a conservative error bound

  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double kronrod = 0.0, gauss = 0.0;
  for (int j = 0; j < 8; ++j) {
    double fsum;
    if (j == 7) {
      fsum = f(center);
    } else {
      fsum = f(center - half * kXgk[j]) + f(center + half * kXgk[j]);
    }
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    else if (j == 7) gauss += kWg[3] * fsum;
  }
  Segment s;
  s.lo = lo;
  s.hi = hi;
  s.estimate = kronrod * half;
  s.error = std::fabs(kronrod - gauss) * half;
  return s;
}

}  // namespace

double integrate(const std::function<double(double)>& f, Interval iv,
                 Tolerance tol, int max_segments) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
    throw std::domain_error("integrate: interval must be finite with lo <= hi");
  if (!(tol.rel > 0.0) || tol.rel >= 1.0 || tol.abs < 0.0)
    throw std::domain_error("integrate: tolerance must satisfy 0 < rel < 1, abs >= 0");
  if (max_segments < 1)
    throw std::domain_error("integrate: max_segments must be >= 1");
  if (iv.lo == iv.hi) return 0.0;

  std::priority_queue<Segment> queue;
  queue.push(evaluate(f, iv.lo, iv.hi));
  double total = queue.top().estimate;
  double total_err = queue.top().error;
  int segments = 1;

  while (total_err > std::fmax(tol.abs, tol.rel * std::fabs(total))) {
    if (segments >= max_segments) {
      throw NumericError(
          "integrate: segment budget exhausted (estimate=" + std::to_string(total) +
              ", error_bound=" + std::to_string(total_err) + ")",
          total, total_err);
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Segment no longer splittable in double precision; accept its value
      // as final and stop charging its error against the budget.
      total_err -= worst.error;
      if (queue.empty()) break;
      continue;
    }
    Segment left = evaluate(f, worst.lo, mid);
    Segment right = evaluate(f, mid, worst.hi);
    total += left.estimate + right.estimate - worst.estimate;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++segments;
  }
  if (!std::isfinite(total))
    throw NumericError("integrate: non-finite result", total, total_err);
  return total;
}

}  // namespace stbc
