#pragma once

#include "collspin/continuum.hpp"
#include "collspin/spin_core.hpp"

#include <Eigen/Dense>

namespace collspin {

// Raw expectation values in the doubled convention S_k = sum_i sigma_i^(k).
// Normalization (per N or per N^2) is applied by callers when presenting.
struct SpinMoments {
  double sx = 0.0;
  double sz = 0.0;
  double sz2 = 0.0;
  double sx2 = 0.0;
  double sy2 = 0.0;

  // sx2 + sy2 + sz2 - N(N+2)
  double casimir_defect(int n_spins) const;
};

SpinMoments spin_moments(const Wavefunction& wf);

// Same sums for a mixed state on the maximum-spin sector; rho is indexed by
// the ladder index k on both sides and must be real symmetric with unit trace.
SpinMoments spin_moments(int n_spins, const Eigen::MatrixXd& rho);

// Leading 1/N expansions away from alpha = 1 (epsilon = 0 only).
SpinMoments analytic_moments(const UniaxialParams& p);

// Leading finite-size corrections at alpha = 1:
//   <Sx>/N   = 1 - 2 b1 (2N)^{-2/3}      <Sz^2>/N^2 = 4 b1 (2N)^{-2/3}
//   <Sx^2>/N^2 = 1 - 4 b1 (2N)^{-2/3}    <Sy^2>/N^2 = (8 b0 / 3) (2N)^{-4/3}
SpinMoments critical_moments(int n_spins);
SpinMoments critical_moments(int n_spins, const BetaCoefficients& beta);

}  // namespace collspin
