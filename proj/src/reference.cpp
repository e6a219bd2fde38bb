#include "collspin/reference.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace collspin::reference {

namespace {

void require_small(int n_spins) {
  if (n_spins < 1 || n_spins > kMaxQubits) throw std::invalid_argument("reference: N must lie in [1, 14]");
}

Eigen::Index dimension(int n_spins) { return Eigen::Index{1} << n_spins; }

// op(s', s) for the real Pauli sums; 'y' stores i*sigma_y, which is real.
Eigen::MatrixXd pauli_sum(int n_spins, char axis) {
  const Eigen::Index dim = dimension(n_spins);
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    for (int q = 0; q < n_spins; ++q) {
      const Eigen::Index bit = Eigen::Index{1} << q;
      const bool up = (s & bit) != 0;
      switch (axis) {
        case 'z': op(s, s) += up ? 1.0 : -1.0; break;
        case 'x': op(s ^ bit, s) += 1.0; break;
        default: op(s ^ bit, s) += up ? -1.0 : 1.0; break;  // i sigma_y|up> = -|down>
      }
    }
  }
  return op;
}

}  // namespace

Eigen::VectorXd dicke_state(int n_spins, int m) {
  require_small(n_spins);
  const int up = (n_spins + m) / 2;
  double count = 1.0;
  for (int i = 1; i <= up; ++i) count = count * (n_spins - up + i) / i;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dimension(n_spins));
  const double amp = 1.0 / std::sqrt(count);
  for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(v.size()); ++s) {
    if (std::popcount(s) == up) v(s) = amp;
  }
  return v;
}

Eigen::VectorXd full_state(const Wavefunction& wf) {
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(dimension(wf.n_spins));
  for (std::size_t k = 0; k < wf.amps.size(); ++k) psi += wf.amps[k] * dicke_state(wf.n_spins, ladder_m(wf.n_spins, k));
  return psi;
}

Eigen::MatrixXd partial_trace(const Eigen::VectorXd& psi, int n_spins, int block) {
  require_small(n_spins);
  if (block < 1 || block > n_spins) throw std::invalid_argument("reference: bad block size");
  const Eigen::Index rest = dimension(n_spins - block);
  // Column-major view: rows run over the traced-out low bits.
  const Eigen::Map<const Eigen::MatrixXd> amps(psi.data(), rest, dimension(block));
  return amps.transpose() * amps;
}

Eigen::MatrixXd symmetric_block(const Eigen::MatrixXd& rho, int block) {
  Eigen::MatrixXd basis(rho.rows(), block + 1);
  for (int i = 0; i <= block; ++i) basis.col(i) = dicke_state(block, -block + 2 * i);
  return basis.transpose() * rho * basis;
}

double linear_entropy(const Eigen::MatrixXd& rho, int block) {
  return (1.0 - (rho * rho).trace()) / (1.0 - std::ldexp(1.0, -block));
}

Eigen::Matrix4d up_first(const Eigen::MatrixXd& rho) {
  Eigen::Matrix4d out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = rho(3 - i, 3 - j);
  return out;
}

Moments dense_moments(const Wavefunction& wf) {
  const Eigen::VectorXd psi = full_state(wf);
  const Eigen::MatrixXd sx = pauli_sum(wf.n_spins, 'x');
  const Eigen::MatrixXd sz = pauli_sum(wf.n_spins, 'z');
  const Eigen::MatrixXd isy = pauli_sum(wf.n_spins, 'y');
  const Eigen::VectorXd x = sx * psi;
  const Eigen::VectorXd z = sz * psi;
  const Eigen::VectorXd y = isy * psi;
  Moments m;
  m.sx = psi.dot(x);
  m.sz = psi.dot(z);
  m.sz2 = z.squaredNorm();
  m.sx2 = x.squaredNorm();
  m.sy2 = y.squaredNorm();  // (i Sy) is real antisymmetric: <Sy^2> = ||i Sy psi||^2
  return m;
}

}  // namespace collspin::reference
