#include "collspin/entanglement.hpp"

#include "collspin/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace collspin {

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void require_block(int n_spins, int block_size) {
  if (block_size < 1 || block_size > n_spins - 1) {
    throw std::invalid_argument("block size must lie in [1, N-1]");
  }
}

}  // namespace

Eigen::Matrix3d TwoQubitRDM::matrix() const {
  const double r2 = std::sqrt(2.0);
  Eigen::Matrix3d m;
  m << v_plus, r2 * x_plus, u,
       r2 * x_plus, 2.0 * w, r2 * x_minus,
       u, r2 * x_minus, v_minus;
  return m;
}

Eigen::Matrix4d TwoQubitRDM::product_basis() const {
  Eigen::Matrix4d m;
  m << v_plus, x_plus, x_plus, u,
       x_plus, w, w, x_minus,
       x_plus, w, w, x_minus,
       u, x_minus, x_minus, v_minus;
  return m;
}

std::vector<double> block_weights(int n_spins, int block_size, int m) {
  require_block(n_spins, block_size);
  if (m < -n_spins || m > n_spins || (m + n_spins) % 2 != 0) {
    throw std::invalid_argument("block_weights: m is not on the ladder");
  }
  const int rest = n_spins - block_size;
  const int up_total = (n_spins + m) / 2;
  const double log_denominator = log_binomial(n_spins, up_total);

  std::vector<double> p(static_cast<std::size_t>(block_size) + 1, 0.0);
  double sum = 0.0;
  for (int j = 0; j <= block_size; ++j) {  // j = up spins in the block
    const int up_rest = up_total - j;
    if (up_rest < 0 || up_rest > rest) continue;
    const double lw = log_binomial(block_size, j) + log_binomial(rest, up_rest) - log_denominator;
    p[static_cast<std::size_t>(j)] = std::exp(lw);
    sum += p[static_cast<std::size_t>(j)];
  }
  // Dividing by the sum removes the rounding carried by the shared denominator.
  for (double& x : p) x /= sum;
  return p;
}

BlockRDM block_rdm(const Wavefunction& wf, int block_size) {
  const int n = wf.n_spins;
  require_block(n, block_size);
  const std::size_t dim = wf.amps.size();
  const std::size_t bdim = static_cast<std::size_t>(block_size) + 1;

  // sqrt_w[k * bdim + i] = p_{l_i, m_k}^{1/2}
  std::vector<double> sqrt_w(dim * bdim);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto p = block_weights(n, block_size, ladder_m(n, k));
    for (std::size_t i = 0; i < bdim; ++i) sqrt_w[k * bdim + i] = std::sqrt(p[i]);
  }

  BlockRDM out{block_size, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(bdim), static_cast<Eigen::Index>(bdim))};
  for (std::size_t i1 = 0; i1 < bdim; ++i1) {
    for (std::size_t i2 = i1; i2 < bdim; ++i2) {
      // m' = m - l1 + l2 is a shift of (i2 - i1) ladder steps.
      const std::ptrdiff_t shift = static_cast<std::ptrdiff_t>(i2) - static_cast<std::ptrdiff_t>(i1);
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const std::ptrdiff_t k2 = static_cast<std::ptrdiff_t>(k) + shift;
        if (k2 < 0 || k2 >= static_cast<std::ptrdiff_t>(dim)) continue;
        const std::size_t kk = static_cast<std::size_t>(k2);
        acc += sqrt_w[k * bdim + i1] * sqrt_w[kk * bdim + i2] * wf.amps[k] * wf.amps[kk];
      }
      const auto r = static_cast<Eigen::Index>(i1);
      const auto c = static_cast<Eigen::Index>(i2);
      out.matrix(r, c) = out.matrix(c, r) = acc;
    }
  }
  return out;
}

double linear_entropy_prefactor(int block_size) {
  if (block_size < 1) throw std::invalid_argument("block size must be >= 1");
  return 1.0 / (1.0 - std::ldexp(1.0, -block_size));
}

double linear_entropy(const BlockRDM& rho) {
  return linear_entropy_prefactor(rho.block_size) * (1.0 - rho.purity());
}

double one_tangle(const Wavefunction& wf) {
  const SpinMoments s = spin_moments(wf);
  const double n = wf.n_spins;
  return 1.0 - (s.sx / n) * (s.sx / n) - (s.sz / n) * (s.sz / n);
}

double one_tangle_analytic(const UniaxialParams& p) {
  p.validate();
  if (p.epsilon != 0.0) throw std::invalid_argument("one_tangle_analytic: requires epsilon = 0");
  if (p.alpha == 1.0) throw std::invalid_argument("one_tangle_analytic: alpha = 1 is critical");
  const double a = p.alpha;
  const double n = p.n_spins;
  if (a < 1.0) return (2.0 + (a - 2.0) / std::sqrt(1.0 - a)) / n;
  return 1.0 - 1.0 / (a * a) + 2.0 / (n * a * std::sqrt(a * a - 1.0));
}

double one_tangle_critical(int n_spins) {
  return 4.0 * default_quartic_constants().beta1 * std::pow(2.0 * n_spins, -2.0 / 3.0);
}

TwoQubitRDM two_qubit_rdm(const Wavefunction& wf) {
  const int n = wf.n_spins;
  if (n < 2) throw std::invalid_argument("two_qubit_rdm: needs N >= 2");
  if (std::abs(wf.norm() - 1.0) > 1e-8) throw std::invalid_argument("two_qubit_rdm: wavefunction is not normalized");

  // J+ = S+/2 is the standard raising operator, <m+2|J+|m> = a^+_m.
  double sz = 0.0, sz2 = 0.0, jp = 0.0, jp2 = 0.0, jp_sz = 0.0;
  const auto& phi = wf.amps;
  const std::size_t dim = phi.size();
  for (std::size_t k = 0; k < dim; ++k) {
    const int m = ladder_m(n, k);
    sz += m * phi[k] * phi[k];
    sz2 += static_cast<double>(m) * m * phi[k] * phi[k];
    if (k + 1 < dim) {
      const double a = ladder_up(n, m);
      jp += a * phi[k + 1] * phi[k];
      jp_sz += a * (2.0 * m + 2.0) * phi[k + 1] * phi[k];
    }
    if (k + 2 < dim) jp2 += ladder_up(n, m + 2) * ladder_up(n, m) * phi[k + 2] * phi[k];
  }

  const double nn = n;
  const double pairs = nn * (nn - 1.0);
  TwoQubitRDM r;
  r.v_plus = (nn * (nn - 2.0) + sz2) / (4.0 * pairs) + sz / (2.0 * nn);
  r.v_minus = (nn * (nn - 2.0) + sz2) / (4.0 * pairs) - sz / (2.0 * nn);
  r.w = (nn * nn - sz2) / (4.0 * pairs);
  r.u = jp2 / pairs;
  r.x_plus = jp / (2.0 * nn) + jp_sz / (4.0 * pairs);
  r.x_minus = jp / (2.0 * nn) - jp_sz / (4.0 * pairs);
  return r;
}

Concurrence rescaled_concurrence(const Wavefunction& wf) {
  const int n = wf.n_spins;
  if (n < 2) throw std::invalid_argument("rescaled_concurrence: needs N >= 2");
  const SpinMoments s = spin_moments(wf);
  const double cy = (1.0 - s.sy2 / n) / (n - 1.0);
  Concurrence c;
  c.c = std::max(0.0, cy);
  c.rescaled = (n - 1.0) * c.c;
  return c;
}

double concurrence_thermodynamic(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (alpha <= 1.0) return 1.0 - std::sqrt(1.0 - alpha);
  return 1.0 - std::sqrt(1.0 - 1.0 / (alpha * alpha));
}

double concurrence_critical(int n_spins) {
  return 1.0 - 4.0 * default_quartic_constants().beta0 / (3.0 * std::cbrt(2.0 * n_spins));
}

}  // namespace collspin
