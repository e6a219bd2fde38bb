#pragma once

// Large-N continuum treatment of the uniaxial ground state: thermodynamic
// energies, Gaussian wavefunctions away from the critical point, and the
// scaled quartic oscillator that governs the critical region alpha ~ 1.

#include "collspin/spin_core.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace collspin {

std::vector<double> z0_minima(double alpha);

// lim ε0(N)/N
double energy_thermodynamic(double alpha, double delta);

// ε0(N)/N through first order in 1/N. Requires epsilon = 0.
double energy_analytic(const UniaxialParams& p);

// Single Gaussian (alpha < 1) or even superposition of two Gaussians centred at
// +-N sqrt(1 - 1/alpha^2) (alpha > 1), sampled on the ladder and renormalized.
// Rejects alpha = 1 and epsilon != 0.
Wavefunction gaussian_wavefunction(const UniaxialParams& p);

// --- scaled critical equation: -phi'' + (zeta n^2 + n^4) phi = e0 phi ---

struct GridSpec {
  double half_width = 10.0;
  double step = 5e-3;
  // Richardson-combine the solve at `step` with one at 2*step.
  bool richardson = true;
  // |phi| allowed at the outermost interior grid point.
  double boundary_tol = 1e-8;
};

class GridTooSmallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuarticSolution {
  double zeta = 0.0;
  double e0 = 0.0;
  std::vector<double> n;    // symmetric grid, boundary points included
  std::vector<double> phi;  // normalized so that trapezoid(phi^2) = 1
  double grid_half_width = 0.0;
  double grid_step = 0.0;

  // Trapezoidal integral of f(n, phi(n)) over the stored grid.
  template <typename F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      double w = (i == 0 || i + 1 == n.size()) ? 0.5 : 1.0;
      acc += w * f(n[i], phi[i]);
    }
    return acc * grid_step;
  }
};

QuarticSolution quartic_ground(double zeta, const GridSpec& grid = {});

struct BetaCoefficients {
  double beta0 = 0.0;
  double beta1 = 0.0;
};

// beta0 = e0(0); beta1 = e0'(0) from the Hellmann-Feynman integral of n^2 phi^2.
BetaCoefficients beta_coefficients(const GridSpec& grid = {});

// K = integral of phi^4 at zeta = 0 for unit-normalized phi (≈ 0.459).
double k_constant(const GridSpec& grid = {});

struct QuarticConstants {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double k = 0.0;
};

// Constants at the default grid, computed once per process.
const QuarticConstants& default_quartic_constants();

// ε0(N)/N at alpha = 1 from the scaled equation: -(δ/2)(1 + 1/N) + δ β0 / (2N)^{4/3}.
double critical_energy(int n_spins, double delta);
double critical_energy(int n_spins, double delta, double beta0);

// zeta = (2N)^{2/3} (1 - alpha)
double scaling_variable(int n_spins, double alpha);

}  // namespace collspin
