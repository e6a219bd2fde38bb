#pragma once

// Brute-force references in the full 2^N qubit space, for validation at small
// N only. Nothing here shares a code path with the collective-basis sums.

#include "collspin/spin_core.hpp"

#include <Eigen/Dense>

namespace collspin::reference {

// Largest N accepted by the routines below.
inline constexpr int kMaxQubits = 14;

// |N, m> written on computational states; bit q = 1 means qubit q is up.
Eigen::VectorXd dicke_state(int n_spins, int m);
Eigen::VectorXd full_state(const Wavefunction& wf);

// Reduced state of the first `block` qubits, taken as the high bits of the index.
Eigen::MatrixXd partial_trace(const Eigen::VectorXd& psi, int n_spins, int block);
// Restriction of a block state to its maximum-spin sector, basis |L, l>, l = -L..L.
Eigen::MatrixXd symmetric_block(const Eigen::MatrixXd& rho, int block);
// eta_L (1 - Tr rho^2) of a block state in the full 2^L space.
double linear_entropy(const Eigen::MatrixXd& rho, int block);
// Two-qubit block (index = 2 b1 + b2) reordered to |uu>, |ud>, |du>, |dd>.
Eigen::Matrix4d up_first(const Eigen::MatrixXd& rho);

struct Moments {
  double sx = 0.0;
  double sz = 0.0;
  double sz2 = 0.0;
  double sx2 = 0.0;
  double sy2 = 0.0;
};
// <S_k> and <S_k^2> from explicit sums of Pauli matrices.
Moments dense_moments(const Wavefunction& wf);

}  // namespace collspin::reference
