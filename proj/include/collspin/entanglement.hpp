#pragma once

#include "collspin/continuum.hpp"
#include "collspin/spin_core.hpp"

#include <Eigen/Dense>

#include <vector>

namespace collspin {

// Reduced state of a block of L spins, written in the block's maximum-spin
// basis |L, l>, l = -L, ..., L (row/column i <-> l = -L + 2i).
struct BlockRDM {
  int block_size = 0;
  Eigen::MatrixXd matrix;

  double purity() const { return matrix.cwiseAbs2().sum(); }
};

// Matrix elements of the two-spin reduced state in the basis |2,2>, |2,0>, |2,-2>:
//
//   | v+        sqrt2 x+   u        |
//   | sqrt2 x+  2 w        sqrt2 x- |
//   | u         sqrt2 x-   v-       |
//
// The singlet |0,0> carries no weight for states in the maximum-spin sector.
struct TwoQubitRDM {
  double v_plus = 0.0;
  double v_minus = 0.0;
  double w = 0.0;
  double u = 0.0;
  double x_plus = 0.0;
  double x_minus = 0.0;

  Eigen::Matrix3d matrix() const;
  // Same state in the product basis |uu>, |ud>, |du>, |dd>.
  Eigen::Matrix4d product_basis() const;
};

struct Concurrence {
  double c = 0.0;         // max{0, C_y}
  double rescaled = 0.0;  // (N - 1) C
};

/// Probabilities p_{lm} of finding block quantum number l inside |N, m>.
///
/// Entry i corresponds to l = -L + 2i. The weights are hypergeometric,
/// C(L, (L+l)/2) C(N-L, (N-L+m-l)/2) / C(N, (N+m)/2), evaluated through
/// log-gamma so that N up to ~1e5 does not overflow. Terms whose binomial
/// arguments leave the valid range are zero. Throws for L outside [1, N-1].
std::vector<double> block_weights(int n_spins, int block_size, int m);

BlockRDM block_rdm(const Wavefunction& wf, int block_size);

// eta_L (1 - Tr rho^2) with eta_L = 2^L / (2^L - 1).
double linear_entropy(const BlockRDM& rho);
double linear_entropy_prefactor(int block_size);

// 1 - (<Sx>/N)^2 - (<Sz>/N)^2
double one_tangle(const Wavefunction& wf);
// Leading 1/N branches for alpha != 1 (epsilon = 0).
double one_tangle_analytic(const UniaxialParams& p);
// 4 beta1 (2N)^{-2/3}
double one_tangle_critical(int n_spins);

TwoQubitRDM two_qubit_rdm(const Wavefunction& wf);

// C_y = (1 - <Sy^2>/N) / (N - 1)
Concurrence rescaled_concurrence(const Wavefunction& wf);
// N -> infinity limit of C_r.
double concurrence_thermodynamic(double alpha);
// 1 - (4 beta0 / 3) (2N)^{-1/3}
double concurrence_critical(int n_spins);

}  // namespace collspin
