#include <cmath>
#include <limits>
#include <stdexcept>

#include "stbc/beamforming.hpp"

namespace stbc {
namespace {

constexpr int kMaxPowerIterations = 500;
constexpr double kRelTol = 1e-13;

// Power iteration on a 2x2 Hermitian PSD Gram matrix, unrolled onto
// registers. g01 is the upper off-diagonal entry; g10 = conj(g01).
// Returns sigma = sqrt(lambda_max) and leaves the unit eigenvector in v0/v1.
double power_iteration_2x2(double g00, double g11, cplx g01, cplx& v0, cplx& v1) {
  // Start from the heavier column of G (a range vector, nonzero since the
  // caller screened out the zero matrix).
  if (g00 >= g11) {
    v0 = cplx{g00, 0.0};
    v1 = std::conj(g01);
  } else {
    v0 = g01;
    v1 = cplx{g11, 0.0};
  }
  double inv = 1.0 / std::sqrt(std::norm(v0) + std::norm(v1));
  v0 *= inv;
  v1 *= inv;

  double lambda = 0.0;
  double lambda_prev = 0.0;
  for (int it = 0; it < kMaxPowerIterations; ++it) {
    const cplx w0 = g00 * v0 + g01 * v1;
    const cplx w1 = std::conj(g01) * v0 + g11 * v1;
    lambda = (std::conj(v0) * w0 + std::conj(v1) * w1).real();
    const double wn = std::norm(w0) + std::norm(w1);
    if (wn <= 0.0) break;
    inv = 1.0 / std::sqrt(wn);
    v0 = w0 * inv;
    v1 = w1 * inv;
    if (it > 0 && std::fabs(lambda - lambda_prev) <= kRelTol * std::fabs(lambda)) break;
    lambda_prev = lambda;
  }
  return lambda > 0.0 ? std::sqrt(lambda) : 0.0;
}

}  // namespace

double principal_sigma(const ComplexMatrix& h, BeamformWorkspace& ws) {
  if (h.rows < 1 || h.cols < 1)
    throw std::invalid_argument("principal_right_singular: empty matrix");
  const int m = h.cols;
  if (m == 1) {
    // Rank-one: the singular value is just the column norm.
    double nn = 0.0;
    for (int r = 0; r < h.rows; ++r) nn += std::norm(h.at(r, 0));
    if (ws.v.size() != 1) ws.v.assign(1, cplx{1.0, 0.0});
    ws.v[0] = cplx{1.0, 0.0};
    return std::sqrt(nn);
  }
  if (m == 2) {
    double g00 = 0.0, g11 = 0.0;
    cplx g01{0.0, 0.0};
    for (int r = 0; r < h.rows; ++r) {
      const cplx a = h.at(r, 0), b = h.at(r, 1);
      g00 += std::norm(a);
      g11 += std::norm(b);
      g01 += std::conj(a) * b;
    }
    if (ws.v.size() != 2) ws.v.resize(2);
    if (g00 <= 0.0 && g11 <= 0.0) {
      ws.v[0] = cplx{1.0, 0.0};
      ws.v[1] = cplx{0.0, 0.0};
      return 0.0;
    }
    return power_iteration_2x2(g00, g11, g01, ws.v[0], ws.v[1]);
  }
  const std::size_t mm = static_cast<std::size_t>(m);
  if (ws.gram.size() != mm * mm) ws.gram.resize(mm * mm);
  if (ws.v.size() != mm) ws.v.resize(mm);
  if (ws.w.size() != mm) ws.w.resize(mm);
  cplx* g = ws.gram.data();
  cplx* v = ws.v.data();
  cplx* w = ws.w.data();

  // Gram matrix G = H^* H (m x m, Hermitian PSD); eigenvalues are squared
  // singular values of H, eigenvectors its right singular vectors.
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      cplx acc{0.0, 0.0};
      for (int r = 0; r < h.rows; ++r) acc += std::conj(h.at(r, i)) * h.at(r, j);
      g[static_cast<std::size_t>(i) * mm + j] = acc;
    }
  }

  // Start from the column with the largest diagonal (= squared column norm
  // of H); it lies in the range of G, and is zero only if G itself is zero.
  int start = 0;
  double best_diag = -1.0;
  for (int i = 0; i < m; ++i) {
    const double d = g[static_cast<std::size_t>(i) * mm + i].real();
    if (d > best_diag) {
      best_diag = d;
      start = i;
    }
  }
  if (best_diag <= 0.0) {
    for (int i = 0; i < m; ++i) v[i] = cplx{0.0, 0.0};
    v[0] = 1.0;
    return 0.0;
  }

  double norm_sq = 0.0;
  for (int i = 0; i < m; ++i) {
    v[i] = g[static_cast<std::size_t>(i) * mm + start];
    norm_sq += std::norm(v[i]);
  }
  double inv = 1.0 / std::sqrt(norm_sq);
  for (int i = 0; i < m; ++i) v[i] *= inv;

  double lambda_prev = 0.0;
  double lambda = 0.0;
  for (int it = 0; it < kMaxPowerIterations; ++it) {
    // w = G v and Rayleigh quotient lambda = v^H G v (real for Hermitian G).
    lambda = 0.0;
    for (int i = 0; i < m; ++i) {
      cplx acc{0.0, 0.0};
      for (int j = 0; j < m; ++j) acc += g[static_cast<std::size_t>(i) * mm + j] * v[j];
      w[i] = acc;
      lambda += (std::conj(v[i]) * acc).real();
    }
    double wn = 0.0;
    for (int i = 0; i < m; ++i) wn += std::norm(w[i]);
    if (wn <= 0.0) break;  // numerically dead direction; lambda spans it
    inv = 1.0 / std::sqrt(wn);
    for (int i = 0; i < m; ++i) v[i] = w[i] * inv;
    if (it > 0 && std::fabs(lambda - lambda_prev) <= kRelTol * std::fabs(lambda)) break;
    lambda_prev = lambda;
  }
  return lambda > 0.0 ? std::sqrt(lambda) : 0.0;
}

PrincipalPair principal_right_singular(const ComplexMatrix& h) {
  BeamformWorkspace ws;
  PrincipalPair out;
  out.sigma = principal_sigma(h, ws);
  out.v = std::move(ws.v);
  return out;
}

BeamformResult svd_beamform_transmit(const ComplexMatrix& h, cplx symbol, double P) {
  if (!(P > 0.0) || !std::isfinite(P))
    throw std::invalid_argument("svd_beamform_transmit: P must be finite and > 0");
  PrincipalPair pair = principal_right_singular(h);
  BeamformResult res;
  res.effective_gain = pair.sigma;
  res.tx.resize(pair.v.size());
  const double amp = std::sqrt(P);
  for (std::size_t i = 0; i < pair.v.size(); ++i) res.tx[i] = amp * pair.v[i] * symbol;
  return res;
}

int ml_detect(cplx y, double gain, double P, const Constellation& constellation) {
  if (constellation.points.empty())
    throw std::invalid_argument("ml_detect: empty constellation");
  const double scale = std::sqrt(P) * gain;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(constellation.points.size()); ++i) {
    const double d = std::norm(y - scale * constellation.points[static_cast<std::size_t>(i)]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace stbc
