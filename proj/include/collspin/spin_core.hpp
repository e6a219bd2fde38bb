#pragma once

// Uniaxial collective spin model in the maximum-spin sector.
//
//   H = -(delta/2) Sx + (epsilon/2) Sz - (g/N) Sz^2,   g = alpha * delta / 4
//
// with doubled operators S_k = sum_i sigma_i^(k). The basis |N, m> runs over
// m = -N, -N+2, ..., N and is stored with index k <-> m = -N + 2k everywhere
// in this library.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace collspin {

struct UniaxialParams {
  int n_spins = 1;
  double delta = 1.0;
  double alpha = 0.0;
  double epsilon = 0.0;

  double coupling() const { return alpha * delta / 4.0; }

  // Throws std::invalid_argument if any field is out of range.
  void validate() const;
};

// Ladder index helpers, shared by every module.
inline int ladder_m(int n_spins, std::size_t k) { return -n_spins + 2 * static_cast<int>(k); }
inline std::size_t ladder_index(int n_spins, int m) { return static_cast<std::size_t>((m + n_spins) / 2); }

// a^+_m = <m+2|J+|m> = (1/2) sqrt(N(N+2) - m(m+2)), with J+ the standard raising operator.
double ladder_up(int n_spins, int m);
// a^-_m = <m-2|J-|m> = (1/2) sqrt(N(N+2) - m(m-2)).
double ladder_down(int n_spins, int m);

struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }
  // max row sum of absolute values
  double inf_norm() const;
  // y = T x
  void multiply(std::span<const double> x, std::span<double> y) const;
  // true when diag and offdiag are palindromes (index-reversal symmetry)
  bool reversal_symmetric() const;
};

struct Wavefunction {
  int n_spins = 0;
  std::vector<double> amps;

  double amp_at(int m) const { return amps[ladder_index(n_spins, m)]; }
  double norm() const;
};

struct SolverOptions {
  double rel_tol = 1e-10;
  int max_iterations = 200;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;
};

struct GroundState {
  double energy = 0.0;
  Wavefunction wavefunction;
};

TridiagonalMatrix build_hamiltonian(const UniaxialParams& p);

/// Lowest eigenpair of a real symmetric tridiagonal matrix.
///
/// Sturm-sequence bisection brackets the eigenvalue, then inverse iteration
/// with a partially pivoted tridiagonal LU factorization extracts the vector.
/// When the matrix is reversal symmetric with non-positive off-diagonals the
/// ground state is even, so the solve runs on the even-parity block only; this
/// keeps the vector well defined when the odd partner is exponentially close.
///
/// The returned vector has unit norm and its largest-magnitude entry positive.
/// Throws SolverError if the residual ||T v - value v||_inf does not reach
/// rel_tol * ||T||_inf within max_iterations sweeps.
Eigenpair lowest_eigenpair(const TridiagonalMatrix& t, const SolverOptions& opts = {});

// Number of eigenvalues strictly below sigma.
std::size_t sturm_count(const TridiagonalMatrix& t, double sigma);

GroundState ground_state(const TridiagonalMatrix& t, const SolverOptions& opts = {});
GroundState ground_state(const UniaxialParams& p, const SolverOptions& opts = {});

/// Ground state from a full dense diagonalization (Eigen), independent of the
/// tridiagonal path. Intended for validation only; rejects N > 64.
GroundState dense_oracle_ground(const UniaxialParams& p);

// <phi|T|phi> for a normalized phi.
double expectation(const TridiagonalMatrix& t, std::span<const double> phi);

}  // namespace collspin
