#include "collspin/dicke.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace collspin {

namespace {

constexpr double kKernelFloor = 1e-16;
constexpr long kMaxOracleDimension = 200000;

void check_kernel_inputs(double alpha, double d_ratio) {
  if (!(alpha >= 0.0) || !(d_ratio >= 0.0)) throw std::invalid_argument("alpha and D must be >= 0");
}

// Product-basis Hamiltonian applied without storing it; index = n (N+1) + k.
class DickeOperator {
 public:
  DickeOperator(const DickeParams& p, int cutoff)
      : n_spins_(p.n_spins), cutoff_(cutoff), dim_spin_(p.n_spins + 1),
        half_delta_(0.5 * p.delta), omega_(p.omega), coupling_(p.lam / std::sqrt(static_cast<double>(p.n_spins))),
        up_(static_cast<std::size_t>(dim_spin_)) {
    for (int k = 0; k < dim_spin_; ++k) up_[static_cast<std::size_t>(k)] = ladder_up(n_spins_, ladder_m(n_spins_, static_cast<std::size_t>(k)));
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(cutoff_ + 1) * dim_spin_; }

  // Bound on ||H||, used to scale convergence thresholds.
  double scale() const {
    return omega_ * cutoff_ + half_delta_ * n_spins_ * 2.0 +
           std::abs(coupling_) * n_spins_ * 2.0 * std::sqrt(cutoff_ + 1.0);
  }

  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y.setZero(dim());
    for (int n = 0; n <= cutoff_; ++n) {
      const Eigen::Index base = static_cast<Eigen::Index>(n) * dim_spin_;
      const double sqrt_n = std::sqrt(static_cast<double>(n));
      const double sqrt_n1 = std::sqrt(static_cast<double>(n) + 1.0);
      for (int k = 0; k < dim_spin_; ++k) {
        const Eigen::Index i = base + k;
        const double m = ladder_m(n_spins_, static_cast<std::size_t>(k));
        double acc = omega_ * n * x(i);
        if (k > 0) acc -= half_delta_ * up_[static_cast<std::size_t>(k - 1)] * x(i - 1);
        if (k + 1 < dim_spin_) acc -= half_delta_ * up_[static_cast<std::size_t>(k)] * x(i + 1);
        double field = 0.0;
        if (n > 0) field += sqrt_n * x(i - dim_spin_);
        if (n < cutoff_) field += sqrt_n1 * x(i + dim_spin_);
        y(i) = acc + coupling_ * m * field;
      }
    }
  }

  // x-polarized qubits in the vacuum.
  Eigen::VectorXd start_vector() const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim());
    for (int k = 0; k < dim_spin_; ++k) {
      v(k) = std::exp(0.5 * (std::lgamma(n_spins_ + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n_spins_ - k + 1.0)));
    }
    v.normalize();
    return v;
  }

 private:
  int n_spins_;
  int cutoff_;
  int dim_spin_;
  double half_delta_;
  double omega_;
  double coupling_;
  std::vector<double> up_;
};

struct LanczosResult {
  double value = 0.0;
  Eigen::VectorXd vector;
};

LanczosResult lanczos_ground(const DickeOperator& op) {
  const Eigen::Index dim = op.dim();
  const Eigen::Index krylov = std::min<Eigen::Index>(dim, 160);
  const double tol = 1e-11 * op.scale();

  Eigen::VectorXd v = op.start_vector();
  Eigen::MatrixXd basis(dim, krylov);
  Eigen::VectorXd w(dim);
  double residual = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < 200; ++restart) {
    std::vector<double> alphas, betas;
    basis.col(0) = v;
    Eigen::Index used = 0;
    double last_beta = 0.0;
    for (Eigen::Index j = 0; j < krylov; ++j) {
      used = j + 1;
      op.apply(basis.col(j), w);
      alphas.push_back(basis.col(j).dot(w));
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd proj = basis.leftCols(used).transpose() * w;
        w -= basis.leftCols(used) * proj;
      }
      last_beta = w.norm();
      if (j + 1 == krylov || last_beta <= 1e-14 * op.scale()) break;
      betas.push_back(last_beta);
      basis.col(j + 1) = w / last_beta;
    }

    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alphas.data(), used);
    Eigen::VectorXd sub = Eigen::Map<Eigen::VectorXd>(betas.data(), used - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small;
    small.computeFromTridiagonal(diag, sub);
    const Eigen::VectorXd y = small.eigenvectors().col(0);
    Eigen::VectorXd x = basis.leftCols(used) * y;
    x.normalize();

    Eigen::VectorXd hx(dim);
    op.apply(x, hx);
    const double value = x.dot(hx);
    residual = (hx - value * x).norm();
    if (residual <= tol) return {value, std::move(x)};
    v = x;
  }
  std::ostringstream msg;
  msg << "Lanczos did not converge: residual " << residual << " > " << tol;
  throw SolverError(msg.str(), residual);
}

Eigen::MatrixXd qubit_density(const Eigen::VectorXd& psi, int n_spins, int cutoff) {
  const Eigen::Index dim_spin = n_spins + 1;
  const Eigen::Map<const Eigen::MatrixXd> amps(psi.data(), dim_spin, cutoff + 1);
  return amps * amps.transpose();
}

}  // namespace

DickeParams DickeParams::from_alpha(int n_spins, double delta, double d_ratio, double alpha) {
  if (!(d_ratio > 0.0) || !(delta > 0.0)) throw std::invalid_argument("from_alpha: delta and D must be > 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("from_alpha: alpha must be >= 0");
  DickeParams p;
  p.n_spins = n_spins;
  p.delta = delta;
  p.omega = delta / d_ratio;
  p.lam = std::sqrt(alpha * p.omega * delta / 4.0);
  p.validate();
  return p;
}

UniaxialParams DickeParams::uniaxial() const {
  return UniaxialParams{n_spins, delta, alpha(), 0.0};
}

void DickeParams::validate() const {
  if (n_spins < 1) throw std::invalid_argument("n_spins must be >= 1");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be > 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be > 0");
  if (!(lam >= 0.0) || !std::isfinite(lam)) throw std::invalid_argument("lambda must be >= 0");
}

double overlap_kernel(int n_spins, double alpha, double d_ratio, int dm) {
  check_kernel_inputs(alpha, d_ratio);
  const double x = static_cast<double>(dm);
  return std::exp(-alpha * d_ratio * x * x / (8.0 * n_spins));
}

SpinMoments dicke_moments(const Wavefunction& wf, int n_spins, double alpha, double d_ratio) {
  if (wf.n_spins != n_spins) throw std::invalid_argument("dicke_moments: wavefunction and parameters disagree on N");
  check_kernel_inputs(alpha, d_ratio);
  SpinMoments s = spin_moments(wf);
  s.sx *= overlap_kernel(n_spins, alpha, d_ratio, 2);
  // Only the Delta m = +-4 part of Sx^2 and Sy^2 is suppressed; their sum is
  // fixed by the Casimir and carries no kernel.
  const double diff = (s.sx2 - s.sy2) * overlap_kernel(n_spins, alpha, d_ratio, 4);
  const double sum = static_cast<double>(n_spins) * (n_spins + 2.0) - s.sz2;
  s.sx2 = 0.5 * (sum + diff);
  s.sy2 = 0.5 * (sum - diff);
  return s;
}

SpinMoments dicke_moments(const Wavefunction& wf, const DickeParams& p) {
  p.validate();
  return dicke_moments(wf, p.n_spins, p.alpha(), p.d_ratio());
}

Concurrence dicke_rescaled_concurrence(const Wavefunction& wf, double alpha, double d_ratio) {
  const int n = wf.n_spins;
  if (n < 2) throw std::invalid_argument("dicke_rescaled_concurrence: needs N >= 2");
  const SpinMoments s = dicke_moments(wf, n, alpha, d_ratio);
  const double cy = (1.0 - s.sy2 / n) / (n - 1.0);
  Concurrence c;
  c.c = std::max(0.0, cy);
  c.rescaled = (n - 1.0) * c.c;
  return c;
}

double dicke_critical_energy(int n_spins, double delta, double d_ratio, double beta0) {
  if (n_spins < 1) throw std::invalid_argument("n_spins must be >= 1");
  if (!(d_ratio >= 0.0)) throw std::invalid_argument("D must be >= 0");
  const double n = n_spins;
  return -0.5 * delta * (1.0 + (2.0 - d_ratio) / (2.0 * n) - 2.0 * beta0 / std::pow(2.0 * n, 4.0 / 3.0));
}

double dicke_critical_energy(int n_spins, double delta, double d_ratio) {
  return dicke_critical_energy(n_spins, delta, d_ratio, default_quartic_constants().beta0);
}

double dicke_alpha_limit(double d_ratio) {
  if (!(d_ratio >= 0.0)) throw std::invalid_argument("D must be >= 0");
  if (d_ratio == 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 + d_ratio * d_ratio) / (2.0 * d_ratio);
}

double dicke_concurrence_thermodynamic(double alpha, double d_ratio) {
  check_kernel_inputs(alpha, d_ratio);
  if (alpha >= dicke_alpha_limit(d_ratio)) {
    throw std::invalid_argument("dicke_concurrence_thermodynamic: alpha must be below (1 + D^2) / 2D");
  }
  double c;
  if (alpha <= 1.0) {
    c = 1.0 - d_ratio * alpha - std::sqrt(1.0 - alpha);
  } else {
    c = 1.0 - d_ratio / alpha - std::sqrt(1.0 - 1.0 / (alpha * alpha));
  }
  return std::max(0.0, c);
}

double dicke_concurrence_critical(int n_spins, double d_ratio) {
  const double b0 = default_quartic_constants().beta0;
  return std::max(0.0, 1.0 - d_ratio - 4.0 * b0 / (3.0 * std::cbrt(2.0 * n_spins)));
}

double qubit_field_tangle(const Wavefunction& wf, double alpha, double d_ratio, TangleNormalization norm) {
  check_kernel_inputs(alpha, d_ratio);
  const int n = wf.n_spins;
  const std::size_t dim = wf.amps.size();
  std::vector<double> prob(dim);
  for (std::size_t k = 0; k < dim; ++k) prob[k] = wf.amps[k] * wf.amps[k];

  // Ladder offset s means m1 - m2 = 2s, kernel exp(-alpha D s^2 / N).
  const double rate = alpha * d_ratio / static_cast<double>(n);
  std::size_t band = dim - 1;
  if (rate > 0.0) {
    band = std::min(band, static_cast<std::size_t>(std::ceil(std::sqrt(-std::log(kKernelFloor) / rate))));
  }
  double purity = 0.0;
  for (std::size_t s = 0; s <= band; ++s) {
    const double kernel = std::exp(-rate * static_cast<double>(s * s));
    double acc = 0.0;
    for (std::size_t k = 0; k + s < dim; ++k) acc += prob[k] * prob[k + s];
    purity += (s == 0 ? 1.0 : 2.0) * kernel * acc;
  }
  double tau = 1.0 - purity;
  if (norm == TangleNormalization::block) tau /= 1.0 - std::ldexp(1.0, -n);
  return tau;
}

double qubit_field_tangle(const Wavefunction& wf, const DickeParams& p, TangleNormalization norm) {
  p.validate();
  if (wf.n_spins != p.n_spins) throw std::invalid_argument("qubit_field_tangle: wavefunction and parameters disagree on N");
  return qubit_field_tangle(wf, p.alpha(), p.d_ratio(), norm);
}

double tangle_thermodynamic(double alpha, double d_ratio) {
  check_kernel_inputs(alpha, d_ratio);
  if (alpha == 1.0) return 1.0;
  if (alpha < 1.0) return 1.0 - 1.0 / std::sqrt(1.0 + d_ratio * alpha / std::sqrt(1.0 - alpha));
  return 1.0 - 0.5 / std::sqrt(1.0 + d_ratio / std::sqrt(alpha * alpha - 1.0));
}

TangleScaling tangle_critical_scaling(int n_spins, double d_ratio, double k_const) {
  if (n_spins < 1) throw std::invalid_argument("n_spins must be >= 1");
  if (!(d_ratio > 0.0)) throw std::invalid_argument("tangle_critical_scaling: D must be > 0");
  TangleScaling t;
  t.value = 1.0 - k_const * std::sqrt(std::numbers::pi / d_ratio) * std::pow(4.0 / n_spins, 1.0 / 6.0);
  t.below_validity = static_cast<double>(n_spins) < 4.0 / (d_ratio * d_ratio * d_ratio);
  return t;
}

TangleScaling tangle_critical_scaling(int n_spins, double d_ratio) {
  return tangle_critical_scaling(n_spins, d_ratio, default_quartic_constants().k);
}

DickeOracleResult exact_dicke_oracle(const DickeParams& p, std::optional<int> boson_cutoff) {
  p.validate();
  const long dim_spin = p.n_spins + 1;
  const auto fits = [&](int cutoff) { return dim_spin * (cutoff + 1L) <= kMaxOracleDimension; };

  int cutoff;
  if (boson_cutoff) {
    if (*boson_cutoff < 1) throw std::invalid_argument("boson cutoff must be >= 1");
    cutoff = *boson_cutoff;
    if (!fits(2 * cutoff)) throw std::invalid_argument("exact_dicke_oracle: dimension cap of 2e5 exceeded");
  } else {
    const double photons = p.lam * p.lam * p.n_spins / (p.omega * p.omega);
    cutoff = static_cast<int>(std::ceil(4.0 * photons)) + 20;
    if (!fits(2 * cutoff)) throw std::invalid_argument("exact_dicke_oracle: dimension cap of 2e5 exceeded");
  }

  LanczosResult coarse = lanczos_ground(DickeOperator(p, cutoff));
  while (true) {
    const int doubled = 2 * cutoff;
    LanczosResult fine = lanczos_ground(DickeOperator(p, doubled));
    const double shift = std::abs(fine.value - coarse.value);
    if (shift < 1e-10 * p.delta) {
      DickeOracleResult r;
      r.energy = fine.value;
      r.cutoff = doubled;
      r.cutoff_shift = shift;
      const Eigen::MatrixXd rho = qubit_density(fine.vector, p.n_spins, doubled);
      r.moments = spin_moments(p.n_spins, rho);
      r.tangle = 1.0 - rho.cwiseAbs2().sum();
      return r;
    }
    if (boson_cutoff || !fits(2 * doubled)) {
      std::ostringstream msg;
      msg << "boson cutoff " << cutoff << " not converged: energy moved by " << shift << " on doubling";
      throw CutoffNotConvergedError(msg.str());
    }
    cutoff = doubled;
    coarse = std::move(fine);
  }
}

}  // namespace collspin
