#include "collspin/continuum.hpp"

#include <cmath>
#include <sstream>

namespace collspin {

namespace {

void require_symmetric_phase(const UniaxialParams& p, const char* who) {
  p.validate();
  if (p.epsilon != 0.0) {
    throw std::invalid_argument(std::string(who) + ": continuum formulas assume epsilon = 0");
  }
}

QuarticSolution solve_on_grid(double zeta, double half_width, double step, double boundary_tol) {
  if (!(half_width > 0.0) || !(step > 0.0)) throw std::invalid_argument("grid half-width and step must be positive");
  const long half_points = std::lround(half_width / step);
  if (half_points < 4) throw GridTooSmallError("grid has fewer than 8 intervals");

  // Interior nodes n_i = (i - half_points) h for i = 1 .. 2 half_points - 1.
  // Integer offsets keep the potential exactly even on the grid.
  const std::size_t interior = static_cast<std::size_t>(2 * half_points - 1);
  const double inv_h2 = 1.0 / (step * step);
  TridiagonalMatrix t;
  t.diag.resize(interior);
  t.offdiag.assign(interior - 1, -inv_h2);
  for (std::size_t i = 0; i < interior; ++i) {
    const double x = static_cast<double>(static_cast<long>(i) + 1 - half_points) * step;
    t.diag[i] = 2.0 * inv_h2 + zeta * x * x + x * x * x * x;
  }
  const Eigenpair ep = lowest_eigenpair(t);

  QuarticSolution sol;
  sol.zeta = zeta;
  sol.e0 = ep.value;
  sol.grid_half_width = static_cast<double>(half_points) * step;
  sol.grid_step = step;
  sol.n.resize(interior + 2);
  sol.phi.assign(interior + 2, 0.0);
  const double scale = 1.0 / std::sqrt(step);
  for (std::size_t i = 0; i < interior + 2; ++i) {
    sol.n[i] = static_cast<double>(static_cast<long>(i) - half_points) * step;
    if (i >= 1 && i <= interior) sol.phi[i] = scale * ep.vector[i - 1];
  }

  const double edge = std::max(std::abs(sol.phi[1]), std::abs(sol.phi[interior]));
  if (edge > boundary_tol) {
    std::ostringstream msg;
    msg << "quartic ground state reaches the grid boundary (|phi| = " << edge << " at n = +-"
        << sol.n[interior] << "); enlarge the half-width";
    throw GridTooSmallError(msg.str());
  }
  return sol;
}

GridSpec coarse(const GridSpec& g) {
  GridSpec c = g;
  c.step = 2.0 * g.step;
  c.richardson = false;
  return c;
}

GridSpec plain(const GridSpec& g) {
  GridSpec c = g;
  c.richardson = false;
  return c;
}

// O(h^2) error model: (4 f(h) - f(2h)) / 3.
double extrapolate(double fine, double coarse_value) { return (4.0 * fine - coarse_value) / 3.0; }

}  // namespace

std::vector<double> z0_minima(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (alpha <= 1.0) return {0.0};
  const double z = std::sqrt(1.0 - 1.0 / (alpha * alpha));
  return {-z, z};
}

double energy_thermodynamic(double alpha, double delta) {
  if (!(alpha >= 0.0) || !(delta >= 0.0)) throw std::invalid_argument("alpha and delta must be >= 0");
  if (alpha <= 1.0) return -0.5 * delta;
  return -0.25 * delta * (alpha + 1.0 / alpha);
}

double energy_analytic(const UniaxialParams& p) {
  require_symmetric_phase(p, "energy_analytic");
  const double a = p.alpha;
  const double n = p.n_spins;
  if (a <= 1.0) return -0.5 * p.delta * (1.0 + (1.0 - std::sqrt(1.0 - a)) / n);
  return -0.5 * p.delta * (0.5 * (a + 1.0 / a) + (a - std::sqrt(a * a - 1.0)) / n);
}

Wavefunction gaussian_wavefunction(const UniaxialParams& p) {
  require_symmetric_phase(p, "gaussian_wavefunction");
  if (p.alpha == 1.0) {
    throw std::invalid_argument("gaussian_wavefunction: width diverges at alpha = 1; use quartic_ground");
  }
  const int n = p.n_spins;
  const double nn = n;
  Wavefunction wf{n, std::vector<double>(static_cast<std::size_t>(n) + 1)};
  if (p.alpha < 1.0) {
    const double k = std::sqrt(1.0 - p.alpha);
    for (std::size_t i = 0; i < wf.amps.size(); ++i) {
      const double m = ladder_m(n, i);
      wf.amps[i] = std::exp(-k * m * m / (4.0 * nn));
    }
  } else {
    const double kbar = p.alpha * std::sqrt(p.alpha * p.alpha - 1.0);
    const double m0 = nn * std::sqrt(1.0 - 1.0 / (p.alpha * p.alpha));
    for (std::size_t i = 0; i < wf.amps.size(); ++i) {
      const double m = ladder_m(n, i);
      wf.amps[i] = std::exp(-kbar * (m - m0) * (m - m0) / (4.0 * nn)) +
                   std::exp(-kbar * (m + m0) * (m + m0) / (4.0 * nn));
    }
  }
  const double norm = wf.norm();
  for (double& a : wf.amps) a /= norm;
  return wf;
}

QuarticSolution quartic_ground(double zeta, const GridSpec& grid) {
  QuarticSolution fine = solve_on_grid(zeta, grid.half_width, grid.step, grid.boundary_tol);
  if (!grid.richardson) return fine;

  const GridSpec c = coarse(grid);
  const QuarticSolution rough = solve_on_grid(zeta, c.half_width, c.step, c.boundary_tol);
  // A step that moves e0 by more than 1e-3 (relative) is outside the asymptotic regime
  // where one extrapolation step is meaningful.
  if (std::abs(fine.e0 - rough.e0) > 1e-3 * std::max(1.0, std::abs(fine.e0))) {
    std::ostringstream msg;
    msg << "quartic eigenvalue not converged under refinement: e0(h) = " << fine.e0 << ", e0(2h) = " << rough.e0;
    throw GridTooSmallError(msg.str());
  }
  fine.e0 = extrapolate(fine.e0, rough.e0);
  return fine;
}

BetaCoefficients beta_coefficients(const GridSpec& grid) {
  const QuarticSolution fine = quartic_ground(0.0, grid);
  const auto second_moment = [](const QuarticSolution& s) {
    return s.integrate([](double x, double f) { return x * x * f * f; });
  };
  BetaCoefficients b{fine.e0, second_moment(fine)};
  if (grid.richardson) {
    const QuarticSolution rough = quartic_ground(0.0, coarse(grid));
    b.beta1 = extrapolate(b.beta1, second_moment(rough));
  }
  return b;
}

double k_constant(const GridSpec& grid) {
  const auto quartic_moment = [](const QuarticSolution& s) {
    return s.integrate([](double, double f) { return f * f * f * f; });
  };
  const double fine = quartic_moment(quartic_ground(0.0, plain(grid)));
  if (!grid.richardson) return fine;
  return extrapolate(fine, quartic_moment(quartic_ground(0.0, coarse(grid))));
}

const QuarticConstants& default_quartic_constants() {
  static const QuarticConstants constants = [] {
    const BetaCoefficients b = beta_coefficients();
    return QuarticConstants{b.beta0, b.beta1, k_constant()};
  }();
  return constants;
}

double critical_energy(int n_spins, double delta, double beta0) {
  if (n_spins < 1) throw std::invalid_argument("n_spins must be >= 1");
  const double n = n_spins;
  return -0.5 * delta * (1.0 + 1.0 / n) + delta * beta0 / std::pow(2.0 * n, 4.0 / 3.0);
}

double critical_energy(int n_spins, double delta) {
  return critical_energy(n_spins, delta, default_quartic_constants().beta0);
}

double scaling_variable(int n_spins, double alpha) {
  return std::pow(2.0 * n_spins, 2.0 / 3.0) * (1.0 - alpha);
}

}  // namespace collspin
