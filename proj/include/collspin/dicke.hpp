#pragma once

// Adiabatic Dicke model: N qubits coupled to a fast oscillator,
//
//   H = -(delta/2) Sx + omega a^dag a + (lambda / sqrt N)(a^dag + a) Sz,
//
// whose Born-Oppenheimer ground state is sum_m phi_m |beta_m> (x) |N, m> with
// phi_m the uniaxial ground state at g = lambda^2/omega and coherent
// displacements beta_m = -lambda m / (omega sqrt N). Qubit observables pick up
// overlap kernels <beta_m|beta_m'> = exp(-alpha D (m - m')^2 / 8N).

#include "collspin/continuum.hpp"
#include "collspin/entanglement.hpp"
#include "collspin/observables.hpp"
#include "collspin/spin_core.hpp"

#include <optional>
#include <stdexcept>

namespace collspin {

struct DickeParams {
  int n_spins = 1;
  double delta = 1.0;
  double omega = 1.0;
  double lam = 0.0;

  // Builds (omega, lambda) from the dimensionless pair (D, alpha).
  static DickeParams from_alpha(int n_spins, double delta, double d_ratio, double alpha);

  double d_ratio() const { return delta / omega; }
  double alpha() const { return 4.0 * lam * lam / (omega * delta); }
  double coupling() const { return lam * lam / omega; }
  // D <= 0.5; outside this the mapping is used but should be read with care.
  bool in_adiabatic_regime() const { return d_ratio() <= 0.5; }
  UniaxialParams uniaxial() const;

  void validate() const;
};

// exp(-alpha D (dm)^2 / 8N): overlap of the coherent states attached to m and m + dm.
double overlap_kernel(int n_spins, double alpha, double d_ratio, int dm);

SpinMoments dicke_moments(const Wavefunction& wf, const DickeParams& p);
SpinMoments dicke_moments(const Wavefunction& wf, int n_spins, double alpha, double d_ratio);

// Rescaled concurrence from the kernel-modified <Sy^2>.
Concurrence dicke_rescaled_concurrence(const Wavefunction& wf, double alpha, double d_ratio);

// ε0(N)/N at alpha = 1: -(δ/2)(1 + (2 - D)/2N - 2 β0 / (2N)^{4/3})
double dicke_critical_energy(int n_spins, double delta, double d_ratio);
double dicke_critical_energy(int n_spins, double delta, double d_ratio, double beta0);

// (1 + D^2) / 2D, upper end of the validity range of the thermodynamic C_r.
double dicke_alpha_limit(double d_ratio);
// N -> infinity: 1 - D alpha - sqrt(1 - alpha) (alpha <= 1), 1 - D/alpha - sqrt(1 - 1/alpha^2)
// (1 < alpha < alpha0), clamped at 0. Throws for alpha >= alpha0.
double dicke_concurrence_thermodynamic(double alpha, double d_ratio);
// alpha = 1, finite N: 1 - D - (4 β0 / 3)(2N)^{-1/3}, clamped at 0.
double dicke_concurrence_critical(int n_spins, double d_ratio);

enum class TangleNormalization {
  unit,   // tau_N = 1 - Tr rho_N^2
  block,  // tau_N = 2^N / (2^N - 1) (1 - Tr rho_N^2)
};

/// Linear entropy between the qubits and the oscillator.
///
/// Tr rho_N^2 = sum_{m1,m2} exp(-alpha D (m1 - m2)^2 / 4N) phi_{m1}^2 phi_{m2}^2,
/// summed over the band where the kernel exceeds 1e-16 (O(N * band)).
double qubit_field_tangle(const Wavefunction& wf, double alpha, double d_ratio,
                          TangleNormalization norm = TangleNormalization::unit);
double qubit_field_tangle(const Wavefunction& wf, const DickeParams& p,
                          TangleNormalization norm = TangleNormalization::unit);

// N -> infinity limit; equals 1 at alpha = 1.
double tangle_thermodynamic(double alpha, double d_ratio);

struct TangleScaling {
  double value = 0.0;
  // N < 4 / D^3: the asymptotic form is not yet accurate
  bool below_validity = false;
};

// 1 - K (pi / D)^{1/2} (4 / N)^{1/6} at alpha = 1.
TangleScaling tangle_critical_scaling(int n_spins, double d_ratio);
TangleScaling tangle_critical_scaling(int n_spins, double d_ratio, double k_const);

class CutoffNotConvergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DickeOracleResult {
  double energy = 0.0;
  SpinMoments moments;
  double tangle = 0.0;  // unit normalization
  int cutoff = 0;
  double cutoff_shift = 0.0;  // |E(cutoff) - E(cutoff / 2)|
};

/// Ground state of the full qubit-oscillator Hamiltonian (counter-rotating
/// terms included) in the truncated product basis |n> (x) |N, m>, n <= cutoff.
///
/// Solved matrix-free by restarted Lanczos with full reorthogonalization. The
/// cutoff defaults to 4 lambda^2 N / omega^2 + 20 quanta and is doubled until
/// the energy moves by less than 1e-10 delta; a supplied cutoff is checked the
/// same way against its double. Throws std::invalid_argument when the first
/// check already needs a dimension (N+1)(cutoff+1) above 2e5, and
/// CutoffNotConvergedError when doubling runs into that cap.
DickeOracleResult exact_dicke_oracle(const DickeParams& p, std::optional<int> boson_cutoff = std::nullopt);

}  // namespace collspin
