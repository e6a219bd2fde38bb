#include "collspin/spin_core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace collspin {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

// Largest-magnitude entry made positive, then unit norm.
void canonicalize(std::vector<double>& v) {
  double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  auto it = std::max_element(v.begin(), v.end(),
                             [](double a, double b) { return std::abs(a) < std::abs(b); });
  double scale = (*it < 0.0 ? -1.0 : 1.0) / norm;
  for (double& x : v) x *= scale;
}

double residual_inf(const TridiagonalMatrix& t, std::span<const double> v, double value) {
  std::vector<double> tv(v.size());
  t.multiply(v, tv);
  double r = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(tv[i] - value * v[i]));
  return r;
}

// Partially pivoted LU of (T - sigma I), following the LAPACK gttrf/gtts2 layout.
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(const TridiagonalMatrix& t, double sigma)
      : n_(t.size()), dl_(t.offdiag), d_(t.diag), du_(t.offdiag),
        du2_(n_ > 2 ? n_ - 2 : 0, 0.0), swapped_(n_ > 1 ? n_ - 1 : 0, false) {
    for (double& x : d_) x -= sigma;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        double fact = d_[i] != 0.0 ? dl_[i] / d_[i] : 0.0;
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    // A shift at an eigenvalue makes the last pivot vanish; perturb it.
    double tiny = std::max(kEps * t.inf_norm(), kSafeMin);
    for (double& x : d_) {
      if (std::abs(x) < tiny) x = std::copysign(tiny, x == 0.0 ? 1.0 : x);
    }
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        double temp = b[i] - dl_[i] * b[i + 1];
        b[i] = b[i + 1];
        b[i + 1] = temp;
      }
    }
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
    for (std::size_t i = n_ >= 3 ? n_ - 2 : 0; i-- > 0;) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> swapped_;
};

double lowest_eigenvalue_bisection(const TridiagonalMatrix& t) {
  const std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = (i > 0 ? std::abs(t.offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.offdiag[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double abs_tol = 2.0 * kEps * std::max(t.inf_norm(), kSafeMin);
  for (int iter = 0; iter < 2000 && hi - lo > abs_tol + 2.0 * kEps * std::max(std::abs(lo), std::abs(hi));
       ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Eigenpair inverse_iteration(const TridiagonalMatrix& t, const SolverOptions& opts) {
  const std::size_t n = t.size();
  if (n == 1) return {t.diag[0], {1.0}};

  const double shift = lowest_eigenvalue_bisection(t);
  const ShiftedTridiagonalLU lu(t, shift);
  const double target = opts.rel_tol * t.inf_norm();

  // Positive, slightly non-uniform start so no eigenvector is exactly missed.
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.01 * std::sin(0.7 * static_cast<double>(i) + 0.3);

  double value = shift;
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    lu.solve(x);
    canonicalize(x);
    value = expectation(t, x);
    residual = residual_inf(t, x, value);
    if (residual <= target) return {value, std::move(x)};
  }
  std::ostringstream msg;
  msg << "inverse iteration did not converge: residual " << residual << " > " << target;
  throw SolverError(msg.str(), residual);
}

}  // namespace

void UniaxialParams::validate() const {
  if (n_spins < 1) throw std::invalid_argument("n_spins must be >= 1");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be finite and >= 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite and >= 0");
  if (!std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be finite");
}

double ladder_up(int n_spins, int m) {
  const double nn = static_cast<double>(n_spins);
  const double mm = static_cast<double>(m);
  return 0.5 * std::sqrt(std::max(0.0, nn * (nn + 2.0) - mm * (mm + 2.0)));
}

double ladder_down(int n_spins, int m) {
  const double nn = static_cast<double>(n_spins);
  const double mm = static_cast<double>(m);
  return 0.5 * std::sqrt(std::max(0.0, nn * (nn + 2.0) - mm * (mm - 2.0)));
}

double TridiagonalMatrix::inf_norm() const {
  double best = 0.0;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag[i]) + (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
                 (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    best = std::max(best, row);
  }
  return best;
}

void TridiagonalMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diag[i] * x[i];
    if (i > 0) acc += offdiag[i - 1] * x[i - 1];
    if (i + 1 < n) acc += offdiag[i] * x[i + 1];
    y[i] = acc;
  }
}

bool TridiagonalMatrix::reversal_symmetric() const {
  return std::equal(diag.begin(), diag.end(), diag.rbegin()) &&
         std::equal(offdiag.begin(), offdiag.end(), offdiag.rbegin());
}

double Wavefunction::norm() const {
  return std::sqrt(std::inner_product(amps.begin(), amps.end(), amps.begin(), 0.0));
}

TridiagonalMatrix build_hamiltonian(const UniaxialParams& p) {
  p.validate();
  const int n = p.n_spins;
  const double quad = p.coupling() / static_cast<double>(n);
  TridiagonalMatrix t;
  t.diag.resize(static_cast<std::size_t>(n) + 1);
  t.offdiag.resize(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
    const double m = ladder_m(n, k);
    t.diag[k] = 0.5 * p.epsilon * m - quad * m * m;
    if (k < static_cast<std::size_t>(n)) t.offdiag[k] = -0.5 * p.delta * ladder_up(n, ladder_m(n, k));
  }
  return t;
}

std::size_t sturm_count(const TridiagonalMatrix& t, double sigma) {
  double emax2 = 0.0;
  for (double e : t.offdiag) emax2 = std::max(emax2, e * e);
  const double pivmin = kSafeMin * std::max(1.0, emax2);
  std::size_t count = 0;
  double q = t.diag[0] - sigma;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.size(); ++i) {
    q = t.diag[i] - sigma - t.offdiag[i - 1] * t.offdiag[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

Eigenpair lowest_eigenpair(const TridiagonalMatrix& t, const SolverOptions& opts) {
  const std::size_t n = t.size();
  if (n == 0) throw std::invalid_argument("empty tridiagonal matrix");
  if (t.offdiag.size() + 1 != n) throw std::invalid_argument("offdiag must have size() - 1 entries");

  const bool even_block = n >= 2 && t.reversal_symmetric() &&
                          std::all_of(t.offdiag.begin(), t.offdiag.end(), [](double e) { return e <= 0.0; });
  if (!even_block) return inverse_iteration(t, opts);

  // Even-parity block in the orthonormal basis (e_k + e_{n-1-k})/sqrt(2), plus
  // the centre site when n is odd.
  const std::size_t half = n / 2;
  TridiagonalMatrix r;
  if (n % 2 == 0) {
    r.diag.assign(t.diag.begin(), t.diag.begin() + static_cast<std::ptrdiff_t>(half));
    r.diag[half - 1] += t.offdiag[half - 1];
    r.offdiag.assign(t.offdiag.begin(), t.offdiag.begin() + static_cast<std::ptrdiff_t>(half - 1));
  } else {
    r.diag.assign(t.diag.begin(), t.diag.begin() + static_cast<std::ptrdiff_t>(half + 1));
    r.offdiag.assign(t.offdiag.begin(), t.offdiag.begin() + static_cast<std::ptrdiff_t>(half));
    r.offdiag[half - 1] *= std::sqrt(2.0);
  }
  Eigenpair reduced = inverse_iteration(r, opts);

  std::vector<double> v(n);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < half; ++k) v[k] = v[n - 1 - k] = s * reduced.vector[k];
  if (n % 2 == 1) v[half] = reduced.vector[half];
  canonicalize(v);

  const double value = expectation(t, v);
  const double residual = residual_inf(t, v, value);
  const double target = opts.rel_tol * t.inf_norm();
  if (residual > target) {
    std::ostringstream msg;
    msg << "even-parity ground state failed the full residual check: " << residual << " > " << target;
    throw SolverError(msg.str(), residual);
  }
  return {value, std::move(v)};
}

GroundState ground_state(const TridiagonalMatrix& t, const SolverOptions& opts) {
  Eigenpair ep = lowest_eigenpair(t, opts);
  return {ep.value, Wavefunction{static_cast<int>(t.size()) - 1, std::move(ep.vector)}};
}

GroundState ground_state(const UniaxialParams& p, const SolverOptions& opts) {
  return ground_state(build_hamiltonian(p), opts);
}

GroundState dense_oracle_ground(const UniaxialParams& p) {
  p.validate();
  if (p.n_spins > 64) throw std::invalid_argument("dense oracle is limited to N <= 64");
  const TridiagonalMatrix t = build_hamiltonian(p);
  const Eigen::Index dim = static_cast<Eigen::Index>(t.size());

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    h(i, i) = t.diag[static_cast<std::size_t>(i)];
    if (i + 1 < dim) h(i, i + 1) = h(i + 1, i) = t.offdiag[static_cast<std::size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  Eigen::VectorXd x = solver.eigenvectors().col(0);

  // With epsilon = 0 the two lowest levels form an even/odd pair that can be
  // split by less than rounding for alpha > 1. Diagonalize the reversal
  // operator inside that pair and keep the even combination.
  if (p.epsilon == 0.0 && dim >= 2) {
    Eigen::MatrixXd pair = solver.eigenvectors().leftCols(2);
    Eigen::MatrixXd reversed = pair.colwise().reverse();
    Eigen::Matrix2d parity = pair.transpose() * reversed;
    parity = 0.5 * (parity + parity.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> ps(parity);
    x = pair * ps.eigenvectors().col(1);
  }

  std::vector<double> v(x.data(), x.data() + x.size());
  canonicalize(v);
  const double energy = expectation(t, v);
  return {energy, Wavefunction{p.n_spins, std::move(v)}};
}

double expectation(const TridiagonalMatrix& t, std::span<const double> phi) {
  std::vector<double> tv(phi.size());
  t.multiply(phi, tv);
  return std::inner_product(phi.begin(), phi.end(), tv.begin(), 0.0);
}

}  // namespace collspin
