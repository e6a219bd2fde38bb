#include "collspin/scaling.hpp"

#include "collspin/dicke.hpp"
#include "collspin/entanglement.hpp"
#include "collspin/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>

namespace collspin {

namespace {

constexpr std::array<std::pair<Observable, std::string_view>, 11> kNames{{
    {Observable::energy_per_spin, "energy"},
    {Observable::sx, "sx"},
    {Observable::one_minus_sx, "one_minus_sx"},
    {Observable::sz2, "sz2"},
    {Observable::sx2, "sx2"},
    {Observable::sy2, "sy2"},
    {Observable::tau1, "tau1"},
    {Observable::cr, "cr"},
    {Observable::one_minus_cr, "one_minus_cr"},
    {Observable::tau_n, "tau_n"},
    {Observable::dicke_cr, "dicke_cr"},
}};

std::vector<SweepRow> window_rows(const SweepTable& table, FitWindow window) {
  std::vector<SweepRow> rows;
  for (const SweepRow& r : table.rows) {
    if (r.n_spins < window.n_min || r.n_spins > window.n_max) continue;
    if (!(r.value > 0.0) || !std::isfinite(r.value)) {
      throw std::invalid_argument("power-law fit needs positive values; N = " + std::to_string(r.n_spins) +
                                  " has " + std::to_string(r.value));
    }
    rows.push_back(r);
  }
  if (rows.size() < 3) throw std::invalid_argument("power-law fit needs at least 3 rows in the window");
  return rows;
}

}  // namespace

std::string_view observable_name(Observable o) {
  for (const auto& [obs, name] : kNames) {
    if (obs == o) return name;
  }
  return "unknown";
}

Observable parse_observable(std::string_view name) {
  for (const auto& [obs, n] : kNames) {
    if (n == name) return obs;
  }
  throw std::invalid_argument("unknown observable '" + std::string(name) + "'");
}

bool observable_needs_d(Observable o) { return o == Observable::tau_n || o == Observable::dicke_cr; }

double evaluate_observable(Observable o, int n_spins, const SweepParams& params) {
  if (observable_needs_d(o) && !params.d_ratio) {
    throw std::invalid_argument(std::string(observable_name(o)) + " needs the D ratio");
  }
  const UniaxialParams p{n_spins, params.delta, params.alpha, params.epsilon};
  const GroundState gs = ground_state(p, params.solver);
  const double n = n_spins;
  switch (o) {
    case Observable::energy_per_spin:
      return gs.energy / n;
    case Observable::sx:
      return spin_moments(gs.wavefunction).sx / n;
    case Observable::one_minus_sx:
      return 1.0 - spin_moments(gs.wavefunction).sx / n;
    case Observable::sz2:
      return spin_moments(gs.wavefunction).sz2 / (n * n);
    case Observable::sx2:
      return spin_moments(gs.wavefunction).sx2 / (n * n);
    case Observable::sy2:
      return spin_moments(gs.wavefunction).sy2 / (n * n);
    case Observable::tau1:
      return one_tangle(gs.wavefunction);
    case Observable::cr:
      return rescaled_concurrence(gs.wavefunction).rescaled;
    case Observable::one_minus_cr:
      return 1.0 - rescaled_concurrence(gs.wavefunction).rescaled;
    case Observable::tau_n:
      return qubit_field_tangle(gs.wavefunction, params.alpha, *params.d_ratio);
    case Observable::dicke_cr:
      return dicke_rescaled_concurrence(gs.wavefunction, params.alpha, *params.d_ratio).rescaled;
  }
  throw std::logic_error("unhandled observable");
}

SweepTable sweep(Observable o, std::span<const int> n_grid, const SweepParams& params, int workers) {
  if (n_grid.empty()) throw std::invalid_argument("sweep: N list is empty");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("sweep: N list must be strictly increasing");
  }

  const std::size_t count = n_grid.size();
  std::vector<SweepRow> rows(count);
  std::vector<std::exception_ptr> failures(count);
  const auto run_rows = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < count; i += stride) {
      try {
        rows[i] = {n_grid[i], evaluate_observable(o, n_grid[i], params)};
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, count);
  if (threads == 1) {
    run_rows(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run_rows, t, threads);
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      throw SweepError("sweep failed at N = " + std::to_string(n_grid[i]) + ": " + e.what(), n_grid[i]);
    }
  }
  return SweepTable{o, params, std::move(rows)};
}

std::vector<int> geometric_grid(int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("geometric_grid: need 1 <= n_min <= n_max");
  std::vector<int> grid;
  for (long n = n_min; n <= n_max; n *= 2) grid.push_back(static_cast<int>(n));
  return grid;
}

PowerLawFit fit_power_law(const SweepTable& table, FitWindow window) {
  const std::vector<SweepRow> rows = window_rows(table, window);
  const double count = static_cast<double>(rows.size());
  double mx = 0.0, my = 0.0;
  for (const SweepRow& r : rows) {
    mx += std::log(static_cast<double>(r.n_spins));
    my += std::log(r.value);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const SweepRow& r : rows) {
    const double dx = std::log(static_cast<double>(r.n_spins)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r.value) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("power-law fit needs distinct N values");

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  fit.prefactor_2n = fit.prefactor * std::pow(2.0, -fit.exponent);
  double ss = 0.0;
  for (const SweepRow& r : rows) {
    const double e = std::log(r.value) - (intercept + fit.exponent * std::log(static_cast<double>(r.n_spins)));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / count);
  fit.window = {rows.front().n_spins, rows.back().n_spins};
  fit.points = rows.size();
  return fit;
}

double fixed_exponent_amplitude(const SweepTable& table, FitWindow window, double exponent) {
  const std::vector<SweepRow> rows = window_rows(table, window);
  double acc = 0.0;
  for (const SweepRow& r : rows) acc += std::log(r.value) - exponent * std::log(static_cast<double>(r.n_spins));
  return std::exp(acc / static_cast<double>(rows.size()));
}

}  // namespace collspin
