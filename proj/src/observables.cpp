#include "collspin/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace collspin {

double SpinMoments::casimir_defect(int n_spins) const {
  const double n = n_spins;
  return sx2 + sy2 + sz2 - n * (n + 2.0);
}

SpinMoments spin_moments(const Wavefunction& wf) {
  const int n = wf.n_spins;
  if (n < 1 || wf.amps.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("spin_moments: wavefunction size does not match n_spins");
  }
  if (std::abs(wf.norm() - 1.0) > 1e-8) throw std::invalid_argument("spin_moments: wavefunction is not normalized");

  const auto& phi = wf.amps;
  const std::size_t dim = phi.size();
  SpinMoments s;
  double cross = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double m = ladder_m(n, k);
    const double p = phi[k] * phi[k];
    s.sz += m * p;
    s.sz2 += m * m * p;
    if (k + 1 < dim) s.sx += 2.0 * ladder_up(n, static_cast<int>(m)) * phi[k] * phi[k + 1];
    if (k >= 1 && k + 1 < dim) {
      cross += ladder_up(n, static_cast<int>(m)) * ladder_down(n, static_cast<int>(m)) * phi[k - 1] * phi[k + 1];
    }
  }
  const double casimir = static_cast<double>(n) * (n + 2.0);
  s.sx2 = 0.5 * (casimir - s.sz2) + 2.0 * cross;
  s.sy2 = 0.5 * (casimir - s.sz2) - 2.0 * cross;
  return s;
}

SpinMoments spin_moments(int n_spins, const Eigen::MatrixXd& rho) {
  const Eigen::Index dim = static_cast<Eigen::Index>(n_spins) + 1;
  if (n_spins < 1 || rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("spin_moments: density matrix size does not match n_spins");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-8) throw std::invalid_argument("spin_moments: density matrix trace != 1");

  SpinMoments s;
  double cross = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const int m = ladder_m(n_spins, static_cast<std::size_t>(k));
    s.sz += m * rho(k, k);
    s.sz2 += static_cast<double>(m) * m * rho(k, k);
    if (k + 1 < dim) s.sx += ladder_up(n_spins, m) * (rho(k, k + 1) + rho(k + 1, k));
    if (k >= 1 && k + 1 < dim) {
      cross += ladder_up(n_spins, m) * ladder_down(n_spins, m) * 0.5 * (rho(k - 1, k + 1) + rho(k + 1, k - 1));
    }
  }
  const double casimir = static_cast<double>(n_spins) * (n_spins + 2.0);
  s.sx2 = 0.5 * (casimir - s.sz2) + 2.0 * cross;
  s.sy2 = 0.5 * (casimir - s.sz2) - 2.0 * cross;
  return s;
}

SpinMoments analytic_moments(const UniaxialParams& p) {
  p.validate();
  if (p.epsilon != 0.0) throw std::invalid_argument("analytic_moments: requires epsilon = 0");
  if (p.alpha == 1.0) throw std::invalid_argument("analytic_moments: alpha = 1 is critical; use critical_moments");

  const double a = p.alpha;
  const double n = p.n_spins;
  SpinMoments s;
  if (a < 1.0) {
    const double k = std::sqrt(1.0 - a);
    s.sx = n * (1.0 + (1.0 + (a - 2.0) / (2.0 * k)) / n);
    s.sz2 = n * n / (n * k);
    s.sx2 = n * n * (1.0 + 2.0 / n * (1.0 - 1.0 / k));
    s.sy2 = n * k;
  } else {
    const double r = std::sqrt(a * a - 1.0);
    s.sx = n * (1.0 / a + 1.0 / (n * r));
    s.sz2 = n * n * (1.0 - 1.0 / (a * a) + 2.0 / n * (1.0 - a / r));
    s.sx2 = n * n * (1.0 / (a * a) + (a * a + 1.0) / (n * a * r));
    s.sy2 = n * std::sqrt(1.0 - 1.0 / (a * a));
  }
  return s;
}

SpinMoments critical_moments(int n_spins, const BetaCoefficients& beta) {
  if (n_spins < 1) throw std::invalid_argument("critical_moments: n_spins must be >= 1");
  const double n = n_spins;
  const double x = std::pow(2.0 * n, -2.0 / 3.0);
  SpinMoments s;
  s.sx = n * (1.0 - 2.0 * beta.beta1 * x);
  s.sz2 = n * n * 4.0 * beta.beta1 * x;
  s.sx2 = n * n * (1.0 - 4.0 * beta.beta1 * x);
  s.sy2 = n * n * (8.0 * beta.beta0 / 3.0) * x * x;
  return s;
}

SpinMoments critical_moments(int n_spins) {
  const QuarticConstants& c = default_quartic_constants();
  return critical_moments(n_spins, BetaCoefficients{c.beta0, c.beta1});
}

}  // namespace collspin
