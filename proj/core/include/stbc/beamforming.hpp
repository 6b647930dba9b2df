#pragma once

#include <vector>

#include "stbc/channel.hpp"
#include "stbc/constellation.hpp"

namespace stbc {

// Dominant singular value of H and the matching right singular vector
// (unit norm, length = number of columns).
struct PrincipalPair {
  double sigma = 0.0;
  std::vector<cplx> v;
};

// Computes the principal pair by power iteration on the Gram matrix H^* H,
// started from its heaviest column. Rayleigh-quotient convergence is
// quadratic in the subspace angle, so ~1e-13 relative stagnation in the
// eigenvalue leaves sigma accurate to full double precision. A zero matrix
// yields sigma = 0 with v = e_0.
PrincipalPair principal_right_singular(const ComplexMatrix& h);

// Reusable scratch for the power iteration, for callers that run it per
// Monte Carlo trial and cannot afford allocations.
struct BeamformWorkspace {
  std::vector<cplx> gram, v, w;
};

// As principal_right_singular but leaves the vector in ws.v and returns only
// the dominant singular value.
double principal_sigma(const ComplexMatrix& h, BeamformWorkspace& ws);

// Transmit vector and post-combining channel gain for maximum-ratio
// beamforming along the dominant right singular vector: tx = sqrt(P) v s.
struct BeamformResult {
  std::vector<cplx> tx;
  double effective_gain = 0.0;
};

BeamformResult svd_beamform_transmit(const ComplexMatrix& h, cplx symbol, double P);

// Coherent ML detection at the matched-filter output: index of the
// constellation point minimizing |y - sqrt(P) * gain * point|. Ties resolve
// to the lowest index.
int ml_detect(cplx y, double gain, double P, const Constellation& constellation);

}  // namespace stbc
