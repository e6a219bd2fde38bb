#include "collspin/acceptance.hpp"

#include "collspin/continuum.hpp"
#include "collspin/dicke.hpp"
#include "collspin/entanglement.hpp"
#include "collspin/observables.hpp"
#include "collspin/reference.hpp"
#include "collspin/scaling.hpp"
#include "collspin/spin_core.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace collspin {

namespace {

std::string printf_string(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}

  void check(std::string label, bool ok, std::string detail) {
    r_.checks.push_back({std::move(label), ok, std::move(detail)});
  }
  // |value - target| <= tol
  void near(std::string label, double value, double target, double tol) {
    const double dev = std::abs(value - target);
    check(std::move(label), dev <= tol, printf_string("%.8g vs %.8g, |diff| %.3g <= %.3g", value, target, dev, tol));
  }
  // |value / target - 1| <= tol
  void relative(std::string label, double value, double target, double tol) {
    const double dev = std::abs(value / target - 1.0);
    check(std::move(label), dev <= tol, printf_string("%.6g vs %.6g, off by %.2f%% <= %.0f%%", value, target, 100.0 * dev, 100.0 * tol));
  }
  void within_time(double secs, double bound) {
    r_.checks.push_back({"runtime", secs < bound, printf_string("%.2f s < %g s", secs, bound), true});
  }
  void at_most(std::string label, double value, double bound) {
    check(std::move(label), value <= bound, printf_string("%.3g <= %.3g", value, bound));
  }

 private:
  CriterionResult& r_;
};

const std::array<double, 6> kAlphaGrid{0.0, 0.3, 0.5, 1.0, 1.3, 2.0};

// --- 1 --------------------------------------------------------------------
void quartic_constants(Recorder& rec) {
  const auto start = std::chrono::steady_clock::now();
  const BetaCoefficients b = beta_coefficients();
  const double k = k_constant();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.near("beta0", b.beta0, 1.06036, 5e-4);
  rec.near("beta1", b.beta1, 0.36203, 5e-4);
  rec.near("K", k, 0.46, 0.01);
  rec.within_time(secs, 5.0);
}

// --- 2 --------------------------------------------------------------------
void thermodynamic_energy(Recorder& rec) {
  const int n = 10000;
  for (double a : {0.5, 2.0}) {
    const double e = ground_state(UniaxialParams{n, 1.0, a, 0.0}).energy / n;
    rec.near(printf_string("alpha=%g eps0/N", a), e, energy_thermodynamic(a, 1.0), 2e-4);
  }
}

// --- 3 --------------------------------------------------------------------
void finite_n_energy(Recorder& rec) {
  for (double a : {0.5, 2.0}) {
    const auto deviation = [a](int n) {
      const UniaxialParams p{n, 1.0, a, 0.0};
      return std::abs(ground_state(p).energy / n - energy_analytic(p));
    };
    const double d1 = deviation(1000);
    const double d2 = deviation(2000);
    rec.at_most(printf_string("alpha=%g |exact - formula| at N=1000", a), d1, 1e-5);
    const double ratio = d1 / d2;
    rec.check(printf_string("alpha=%g shrink factor N=1000 -> 2000", a), ratio >= 3.5 && ratio <= 4.5,
              printf_string("%.3f in [3.5, 4.5]", ratio));
  }
}

// --- 4 --------------------------------------------------------------------
void continuum_wavefunctions(Recorder& rec) {
  for (double a : {0.3, 1.3}) {
    const UniaxialParams p{200, 1.0, a, 0.0};
    const Wavefunction exact = ground_state(p).wavefunction;
    const Wavefunction cont = gaussian_wavefunction(p);
    double worst = 0.0;
    for (std::size_t k = 0; k < exact.amps.size(); ++k) worst = std::max(worst, std::abs(exact.amps[k] - cont.amps[k]));
    rec.at_most(printf_string("alpha=%g max |phi_exact - phi_continuum|", a), worst, 0.01);
  }
}

// --- 5, 6 -----------------------------------------------------------------
struct FitTarget {
  Observable observable;
  double exponent;
  double exponent_tol;
  double prefactor;  // N-convention amplitude; 0 when not checked
  double prefactor_tol;
};

void fit_checks(Recorder& rec, const FitTarget& t, int workers) {
  const std::vector<int> grid = geometric_grid(512, 8192);
  SweepParams params;
  params.alpha = 1.0;
  const SweepTable table = sweep(t.observable, grid, params, workers);
  const FitWindow window{512, 8192};
  const PowerLawFit fit = fit_power_law(table, window);
  const std::string name(observable_name(t.observable));
  rec.near(name + " slope", fit.exponent, t.exponent, t.exponent_tol);
  if (t.prefactor > 0.0) {
    // The amplitude at the theoretical exponent; the free-fit intercept trades
    // off against the slope across a window this far from N = 1.
    const double amp = fixed_exponent_amplitude(table, window, t.exponent);
    rec.relative(name + " prefactor", amp, t.prefactor, t.prefactor_tol);
    rec.check(name + " free-fit prefactor (reported)", true,
              printf_string("%.6g, %.2f%% from target", fit.prefactor, 100.0 * std::abs(fit.prefactor / t.prefactor - 1.0)));
  }
}

void critical_exponents(Recorder& rec, int workers) {
  const auto start = std::chrono::steady_clock::now();
  const QuarticConstants& c = default_quartic_constants();
  fit_checks(rec, {Observable::sz2, -2.0 / 3.0, 0.02, 4.0 * c.beta1 * std::pow(2.0, -2.0 / 3.0), 0.05}, workers);
  fit_checks(rec, {Observable::sy2, -4.0 / 3.0, 0.03, 8.0 * c.beta0 / 3.0 * std::pow(2.0, -4.0 / 3.0), 0.08}, workers);
  fit_checks(rec, {Observable::one_minus_sx, -2.0 / 3.0, 0.02, 0.0, 0.0}, workers);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.within_time(secs, 60.0);
}

void concurrence_scaling(Recorder& rec, int workers) {
  const QuarticConstants& c = default_quartic_constants();
  fit_checks(rec, {Observable::one_minus_cr, -1.0 / 3.0, 0.02, 4.0 * c.beta0 / 3.0 * std::pow(2.0, -1.0 / 3.0), 0.08}, workers);
}

// --- 7 --------------------------------------------------------------------
void dicke_layer(Recorder& rec) {
  rec.near("C_r(alpha=1, D=0.1, N=inf)", dicke_concurrence_thermodynamic(1.0, 0.1), 0.9, 1e-6);
  const double closed = 1.0 - std::pow(1.0 + 0.1 * 0.5 / std::sqrt(1.0 - 0.5), -0.5);
  rec.near("tau_inf(alpha=0.5, D=0.1)", tangle_thermodynamic(0.5, 0.1), closed, 1e-10);

  const std::array<int, 4> sizes{6, 10, 20, 100};
  int violations = 0;
  int points = 0;
  std::string first;
  for (int i = 1; i < 40; ++i) {
    const double a = 0.05 * i;
    if (i == 20) continue;  // the cusp, where tau_inf = 1 is a limit only
    std::array<double, 4> t{};
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      t[j] = qubit_field_tangle(ground_state(UniaxialParams{sizes[j], 1.0, a, 0.0}).wavefunction, a, 0.1);
    }
    const double lim = tangle_thermodynamic(a, 0.1);
    bool ok = true;
    for (std::size_t j = 1; j < t.size(); ++j) {
      ok = ok && t[j] > t[j - 1] && std::abs(t[j] - lim) < std::abs(t[j - 1] - lim);
    }
    ++points;
    if (!ok) {
      if (violations++ == 0) first = printf_string(" (first at alpha=%g)", a);
    }
  }
  rec.check("tau_N increasing in N toward tau_inf, N=6,10,20,100", violations == 0,
            printf_string("%d of %d alpha points out of order%s", violations, points, first.c_str()));
}

// --- 8 --------------------------------------------------------------------
void oracle_equivalence(Recorder& rec) {
  const auto start = std::chrono::steady_clock::now();
  double worst_e = 0.0, worst_amp = 0.0;
  for (int n = 1; n <= 64; ++n) {
    for (double a : kAlphaGrid) {
      for (double eps : {0.0, 0.1}) {
        const UniaxialParams p{n, 1.0, a, eps};
        const GroundState fast = ground_state(p);
        const GroundState dense = dense_oracle_ground(p);
        worst_e = std::max(worst_e, std::abs(fast.energy - dense.energy));
        for (std::size_t k = 0; k < fast.wavefunction.amps.size(); ++k) {
          worst_amp = std::max(worst_amp, std::abs(fast.wavefunction.amps[k] - dense.wavefunction.amps[k]));
        }
      }
    }
  }
  rec.at_most("dense vs tridiagonal energy, N<=64", worst_e, 1e-9);
  rec.at_most("dense vs tridiagonal amplitudes, N<=64", worst_amp, 1e-8);

  double worst_ent = 0.0;
  for (int n = 2; n <= 12; ++n) {
    for (double a : {0.0, 0.5, 1.0, 2.0}) {
      const Wavefunction wf = ground_state(UniaxialParams{n, 1.0, a, 0.0}).wavefunction;
      const Eigen::VectorXd psi = reference::full_state(wf);
      for (int l = 1; l < n; ++l) {
        const Eigen::MatrixXd full = reference::partial_trace(psi, n, l);
        const BlockRDM rho = block_rdm(wf, l);
        worst_ent = std::max(worst_ent, (rho.matrix - reference::symmetric_block(full, l)).cwiseAbs().maxCoeff());
        worst_ent = std::max(worst_ent, std::abs(linear_entropy(rho) - reference::linear_entropy(full, l)));
        if (l == 2) {
          const Eigen::Matrix4d two = two_qubit_rdm(wf).product_basis();
          worst_ent = std::max(worst_ent, (two - reference::up_first(full)).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  rec.at_most("block states and linear entropy vs dense partial traces, N<=12", worst_ent, 1e-9);

  std::array<double, 3> err{};
  const std::array<double, 3> ds{0.1, 0.05, 0.025};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const DickeParams p = DickeParams::from_alpha(2, 1.0, ds[i], 0.5);
    const double exact = exact_dicke_oracle(p).energy;
    err[i] = std::abs(ground_state(p.uniaxial()).energy - exact) / std::abs(exact);
  }
  rec.check("Dicke adiabatic energy error, N=2, alpha=0.5, D=0.1,0.05,0.025", err[1] < err[0] && err[2] < err[1],
            printf_string("%.3g > %.3g > %.3g", err[0], err[1], err[2]));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.within_time(secs, 120.0);
}

// --- 9 --------------------------------------------------------------------
void invariant_suite(Recorder& rec) {
  const std::array<int, 5> sizes{2, 9, 64, 500, 4000};
  double norm_dev = 0.0, casimir = 0.0, weight_sum = 0.0, psd = 0.0, trace_dev = 0.0, hf = 0.0;
  double dicke_casimir = 0.0;
  bool tau_in_range = true;
  for (int n : sizes) {
    const double nn = n;
    for (double a : kAlphaGrid) {
      for (double eps : {0.0, 0.1}) {
        const UniaxialParams p{n, 1.0, a, eps};
        const GroundState gs = ground_state(p);
        const Wavefunction& wf = gs.wavefunction;
        norm_dev = std::max(norm_dev, std::abs(wf.norm() - 1.0));
        const SpinMoments s = spin_moments(wf);
        casimir = std::max(casimir, std::abs(s.casimir_defect(n)) / (nn * nn));

        const int l = std::max(1, n / 2);
        if (n >= 2) {
          for (int m = -n; m <= n; m += 2) {
            const auto w = block_weights(n, l, m);
            double sum = 0.0;
            for (double x : w) sum += x;
            weight_sum = std::max(weight_sum, std::abs(sum - 1.0));
          }
          if (n <= 500) {
            for (int block : {1, l}) {
              const BlockRDM rho = block_rdm(wf, block);
              trace_dev = std::max(trace_dev, std::abs(rho.matrix.trace() - 1.0));
              psd = std::max(psd, -Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(rho.matrix).eigenvalues().minCoeff());
            }
          }
          const TwoQubitRDM two = two_qubit_rdm(wf);
          trace_dev = std::max(trace_dev, std::abs(two.v_plus + two.v_minus + 2.0 * two.w - 1.0));
          psd = std::max(psd, -Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(two.matrix()).eigenvalues().minCoeff());
        }

        if (eps == 0.0) {
          const SpinMoments d = dicke_moments(wf, n, a, 0.1);
          dicke_casimir = std::max(dicke_casimir, std::abs(d.casimir_defect(n)) / (nn * nn));
          const double tau = qubit_field_tangle(wf, a, 0.1);
          tau_in_range = tau_in_range && tau >= -1e-12 && tau <= 1.0 + 1e-12;
        }

        // Hellmann-Feynman at fixed g and fixed delta.
        const double g = p.coupling();
        const auto energy = [&](double delta, double gg) {
          return ground_state(UniaxialParams{n, delta, 4.0 * gg / delta, eps}).energy;
        };
        // Richardson-extrapolated central differences: near alpha = 1 the
        // energy varies on a scale N^{-2/3} in alpha, so a plain step of 1e-4
        // leaves a truncation error above the bound at N = 4000.
        const auto derivative = [](const auto& f, double x, double h) {
          const double coarse = (f(x + h) - f(x - h)) / (2.0 * h);
          const double fine = (f(x + h / 2) - f(x - h / 2)) / h;
          return (4.0 * fine - coarse) / 3.0;
        };
        const double sx_fd = -2.0 * derivative([&](double d) { return energy(d, g); }, 1.0, 1e-4);
        hf = std::max(hf, std::abs(sx_fd / s.sx - 1.0));
        if (g > 0.0) {
          const double sz2_fd = -nn * derivative([&](double gg) { return energy(1.0, gg); }, g, 1e-4 * g);
          hf = std::max(hf, std::abs(sz2_fd / s.sz2 - 1.0));
        }
      }
    }
  }
  rec.at_most("wavefunction norm", norm_dev, 1e-12);
  rec.at_most("Casimir identity / N^2", casimir, 1e-9);
  rec.at_most("Casimir identity / N^2 with overlap kernels", dicke_casimir, 1e-9);
  rec.at_most("hypergeometric weight sums", weight_sum, 1e-12);
  rec.at_most("reduced-state traces", trace_dev, 1e-10);
  rec.at_most("reduced-state negativity", psd, 1e-10);
  rec.check("tau_N within [0, 1]", tau_in_range, tau_in_range ? "all points" : "out of range");
  rec.at_most("Hellmann-Feynman relative mismatch", hf, 1e-5);

  const QuarticSolution q = quartic_ground(0.0);
  rec.near("quartic normalization", q.integrate([](double, double f) { return f * f; }), 1.0, 1e-8);
  rec.at_most("quartic boundary amplitude", std::max(std::abs(q.phi[1]), std::abs(q.phi[q.phi.size() - 2])), 1e-8);

  // The N^{-1/6} tangle law needs N >> 4/D^3; at D = 1 the exact tangle must
  // rise with N and close on the formula.
  const double k = default_quartic_constants().k;
  // (4/N)^{1/6} = 0.1 at N = 4e6
  rec.near("tangle law at D=1, N=4e6", tangle_critical_scaling(4000000, 1.0).value,
           1.0 - k * std::sqrt(std::numbers::pi) * 0.1, 1e-12);
  bool trend = true;
  double prev_t = 0.0, prev_gap = 1e300;
  std::string gaps;
  for (int n : {100, 1000, 10000, 100000}) {
    const double t = qubit_field_tangle(ground_state(UniaxialParams{n, 1.0, 1.0, 0.0}).wavefunction, 1.0, 1.0);
    const double gap = t - tangle_critical_scaling(n, 1.0).value;
    trend = trend && t > prev_t && std::abs(gap) < prev_gap;
    prev_t = t;
    prev_gap = std::abs(gap);
    gaps += printf_string("%s%+.4f", gaps.empty() ? "" : ", ", gap);
  }
  rec.check("critical tangle rises toward the N^{-1/6} law, D=1, N=1e2..1e5", trend, "tau_N - law: " + gaps);
}

struct Entry {
  const char* title;
  void (*run)(Recorder&, int);
};

const std::array<Entry, kCriterionCount> kEntries{{
    {"quartic constants", [](Recorder& r, int) { quartic_constants(r); }},
    {"thermodynamic energy", [](Recorder& r, int) { thermodynamic_energy(r); }},
    {"1/N energy formulas", [](Recorder& r, int) { finite_n_energy(r); }},
    {"continuum wavefunctions at N=200", [](Recorder& r, int) { continuum_wavefunctions(r); }},
    {"critical exponents", [](Recorder& r, int w) { critical_exponents(r, w); }},
    {"concurrence scaling", [](Recorder& r, int w) { concurrence_scaling(r, w); }},
    {"Dicke layer", [](Recorder& r, int) { dicke_layer(r); }},
    {"oracle equivalence", [](Recorder& r, int) { oracle_equivalence(r); }},
    {"invariant suite", [](Recorder& r, int) { invariant_suite(r); }},
}};

}  // namespace

bool CriterionResult::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

CriterionResult run_criterion(int id, int workers) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("acceptance criterion id must be 1..9");
  const Entry& e = kEntries[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  Recorder rec(r);
  const auto start = std::chrono::steady_clock::now();
  try {
    e.run(rec, workers);
  } catch (const std::exception& ex) {
    rec.check("evaluation", false, std::string("error: ") + ex.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(int workers) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, workers));
  return out;
}

std::string summary_line(const CriterionResult& r) {
  std::string line = printf_string("%s  %d  %s  (%.2f s)", r.passed() ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
  if (!r.passed()) {
    std::string failing;
    for (const CheckResult& c : r.checks) {
      if (!c.passed) failing += (failing.empty() ? "" : "; ") + c.label;
    }
    line += "  failing: " + failing;
  }
  return line;
}

std::vector<std::string> detail_lines(const CriterionResult& r) {
  std::vector<std::string> lines;
  for (const CheckResult& c : r.checks) {
    lines.push_back(printf_string("  [%d] %-4s %s: %s", r.id, c.passed ? "ok" : "FAIL", c.label.c_str(), c.detail.c_str()));
  }
  return lines;
}

}  // namespace collspin
