#pragma once

// Test-only references on top of the 2^N state-vector routines: exact
// binomials, random symmetric states, and the Wootters spin-flip concurrence.

#include "collspin/reference.hpp"
#include "collspin/spin_core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using namespace collspin::reference;

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Wootters concurrence of a real two-qubit state in the basis |uu>,|ud>,|du>,|dd>.
inline double wootters_concurrence(const Eigen::Matrix4d& rho) {
  Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();  // sigma_y (x) sigma_y is real
  flip(0, 3) = flip(3, 0) = -1.0;
  flip(1, 2) = flip(2, 1) = 1.0;
  const Eigen::Matrix4d tilde = flip * rho * flip;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
  const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4d sqrt_rho = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> r(sqrt_rho * tilde * sqrt_rho);
  Eigen::Vector4d l = r.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(l.data(), l.data() + 4, std::greater<>());
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

inline collspin::Wavefunction random_wavefunction(int n, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  collspin::Wavefunction wf{n, std::vector<double>(static_cast<std::size_t>(n) + 1)};
  for (double& a : wf.amps) a = gauss(rng);
  const double norm = wf.norm();
  for (double& a : wf.amps) a /= norm;
  return wf;
}

}  // namespace oracle
