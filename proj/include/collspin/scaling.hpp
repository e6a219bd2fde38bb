#pragma once

#include "collspin/spin_core.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace collspin {

enum class Observable {
  energy_per_spin,  // ε0/N
  sx,               // <Sx>/N
  one_minus_sx,     // 1 - <Sx>/N
  sz2,              // <Sz^2>/N^2
  sx2,              // <Sx^2>/N^2
  sy2,              // <Sy^2>/N^2
  tau1,
  cr,
  one_minus_cr,
  tau_n,     // qubit-oscillator tangle; needs D
  dicke_cr,  // needs D
};

std::string_view observable_name(Observable o);
// Throws std::invalid_argument for unknown names.
Observable parse_observable(std::string_view name);
bool observable_needs_d(Observable o);

struct SweepParams {
  double alpha = 1.0;
  double delta = 1.0;
  double epsilon = 0.0;
  std::optional<double> d_ratio;
  SolverOptions solver;
};

struct SweepRow {
  int n_spins = 0;
  double value = 0.0;
};

struct SweepTable {
  Observable observable = Observable::sz2;
  SweepParams params;
  std::vector<SweepRow> rows;
};

class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, int n_spins) : std::runtime_error(what), n_spins_(n_spins) {}
  int n_spins() const { return n_spins_; }

 private:
  int n_spins_;
};

double evaluate_observable(Observable o, int n_spins, const SweepParams& params);

// One ground-state solve per N; rows are spread over `workers` threads and
// reassembled in input order. A failing row raises SweepError naming its N
// (the smallest failing N when several fail).
SweepTable sweep(Observable o, std::span<const int> n_grid, const SweepParams& params, int workers = 1);

// n_min, 2 n_min, 4 n_min, ... up to n_max.
std::vector<int> geometric_grid(int n_min, int n_max);

struct FitWindow {
  int n_min = 0;
  int n_max = 0;
};

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;     // y ≈ prefactor * N^exponent
  double prefactor_2n = 0.0;  // y ≈ prefactor_2n * (2N)^exponent
  double residual = 0.0;      // RMS deviation of ln y from the line
  FitWindow window;           // first and last N actually used
  std::size_t points = 0;
};

// Ordinary least squares of ln y against ln N over rows with N in the window.
PowerLawFit fit_power_law(const SweepTable& table, FitWindow window);

// Amplitude A of y ≈ A N^exponent with the exponent held fixed: the geometric
// mean of y N^{-exponent} over the window.
double fixed_exponent_amplitude(const SweepTable& table, FitWindow window, double exponent);

}  // namespace collspin
