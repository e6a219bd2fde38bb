#include "collspin/cli.hpp"

#include "collspin/acceptance.hpp"
#include "collspin/continuum.hpp"
#include "collspin/dicke.hpp"
#include "collspin/entanglement.hpp"
#include "collspin/observables.hpp"
#include "collspin/scaling.hpp"
#include "collspin/spin_core.hpp"
#include "collspin/table.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace collspin {

namespace {

const std::vector<std::string> kCommands{"ground", "moments", "entangle", "dicke", "quartic", "scaling", "figures", "verify"};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

template <typename T>
void forbid(const std::optional<T>& value, const char* flag, const std::string& command) {
  if (value) fail(std::string(flag) + " does not apply to '" + command + "'");
}

bool dicke_figure(const RunConfig& c) { return c.command == "figures" && c.fig && (*c.fig == 3 || *c.fig == 4); }

// Commands whose model parameters include the oscillator.
bool uses_d(const RunConfig& c) {
  if (c.command == "dicke" || dicke_figure(c)) return true;
  if (c.command == "scaling" && c.observable) {
    try {
      return observable_needs_d(parse_observable(*c.observable));
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  return false;
}

bool uses_grid(const RunConfig& c) {
  return c.command == "scaling" || (c.command == "figures" && c.fig && *c.fig >= 2);
}

std::vector<int> n_grid(const RunConfig& c, int default_min, int default_max) {
  if (c.ngrid) return *c.ngrid;
  return geometric_grid(c.nmin.value_or(default_min), c.nmax.value_or(default_max));
}

std::vector<double> default_alpha_sweep() {
  std::vector<double> a;
  for (int i = 0; i <= 100; ++i) a.push_back(i / 50.0);
  return a;
}

Cell opt_cell(std::optional<double> v) {
  if (v) return *v;
  return std::string();
}

nlohmann::ordered_json parameter_metadata(const RunConfig& c) {
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  if (c.n) p["n"] = *c.n;
  if (c.alphas) p["alpha"] = *c.alphas;
  p["delta"] = c.delta;
  p["epsilon"] = c.epsilon;
  if (c.d_ratio) p["d_ratio"] = *c.d_ratio;
  if (c.ngrid) p["ngrid"] = *c.ngrid;
  if (c.nmin) p["nmin"] = *c.nmin;
  if (c.nmax) p["nmax"] = *c.nmax;
  if (c.observable) p["observable"] = *c.observable;
  if (c.fit_min) p["fit_min"] = *c.fit_min;
  if (c.fit_max) p["fit_max"] = *c.fit_max;
  if (c.fig) p["fig"] = *c.fig;
  if (c.block) p["block"] = *c.block;
  if (c.zetas) p["zeta"] = *c.zetas;
  if (c.oracle) p["oracle"] = true;
  if (c.cutoff) p["cutoff"] = *c.cutoff;
  if (c.criteria) p["criteria"] = *c.criteria;
  return p;
}

Document new_document(const RunConfig& c) {
  Document doc;
  doc.metadata["tool"] = "collspin";
  doc.metadata["version"] = kToolVersion;
  doc.metadata["command"] = c.command;
  doc.metadata["parameters"] = parameter_metadata(c);
  const SolverOptions s = c.solver();
  doc.metadata["tolerances"] = {{"rel_tol", s.rel_tol}, {"max_iterations", s.max_iterations}};
  return doc;
}

// --- commands ---------------------------------------------------------------

Document cmd_ground(const RunConfig& c) {
  Document doc = new_document(c);
  Table summary{"ground", {"alpha", "n", "energy", "energy_per_spin", "energy_thermodynamic"}, {}};
  Table wave{"wavefunction", {"alpha", "m", "phi"}, {}};
  const int n = *c.n;
  for (double a : *c.alphas) {
    const GroundState gs = ground_state(UniaxialParams{n, c.delta, a, c.epsilon}, c.solver());
    summary.add_row({a, std::int64_t{n}, gs.energy, gs.energy / n,
                     c.epsilon == 0.0 ? Cell(energy_thermodynamic(a, c.delta)) : Cell(std::string())});
    for (std::size_t k = 0; k < gs.wavefunction.amps.size(); ++k) {
      wave.add_row({a, std::int64_t{ladder_m(n, k)}, gs.wavefunction.amps[k]});
    }
  }
  doc.tables = {std::move(summary), std::move(wave)};
  return doc;
}

Document cmd_moments(const RunConfig& c) {
  Document doc = new_document(c);
  Table t{"moments", {"alpha", "n", "source", "sx_n", "sz_n", "sz2_n2", "sx2_n2", "sy2_n2", "sy2_n"}, {}};
  const int n = *c.n;
  const double nn = n;
  const auto add = [&](double a, const char* source, const SpinMoments& s) {
    t.add_row({a, std::int64_t{n}, std::string(source), s.sx / nn, s.sz / nn, s.sz2 / (nn * nn), s.sx2 / (nn * nn),
               s.sy2 / (nn * nn), s.sy2 / nn});
  };
  for (double a : *c.alphas) {
    const UniaxialParams p{n, c.delta, a, c.epsilon};
    add(a, "exact", spin_moments(ground_state(p, c.solver()).wavefunction));
    if (c.epsilon != 0.0) continue;
    if (a == 1.0) {
      add(a, "critical", critical_moments(n));
    } else {
      add(a, "analytic", analytic_moments(p));
    }
  }
  doc.tables = {std::move(t)};
  return doc;
}

Document cmd_entangle(const RunConfig& c) {
  Document doc = new_document(c);
  const int n = *c.n;
  const int block = c.block.value_or(n / 2);
  Table t{"entanglement", {"alpha", "n", "tau1", "tau1_formula", "c", "cr", "cr_formula", "block", "tau_block"}, {}};
  for (double a : *c.alphas) {
    const UniaxialParams p{n, c.delta, a, c.epsilon};
    const Wavefunction wf = ground_state(p, c.solver()).wavefunction;
    const Concurrence conc = rescaled_concurrence(wf);
    std::optional<double> tau1_formula, cr_formula;
    if (c.epsilon == 0.0) {
      tau1_formula = a == 1.0 ? one_tangle_critical(n) : one_tangle_analytic(p);
      cr_formula = a == 1.0 ? concurrence_critical(n) : concurrence_thermodynamic(a);
    }
    t.add_row({a, std::int64_t{n}, one_tangle(wf), opt_cell(tau1_formula), conc.c, conc.rescaled, opt_cell(cr_formula),
               std::int64_t{block}, linear_entropy(block_rdm(wf, block))});
  }
  doc.tables = {std::move(t)};
  return doc;
}

Document cmd_dicke(const RunConfig& c) {
  Document doc = new_document(c);
  const int n = *c.n;
  const double nn = n;
  const double d = *c.d_ratio;
  Table t{"dicke",
          {"alpha", "d_ratio", "n", "adiabatic_regime", "sx_n", "sz2_n2", "sx2_n2", "sy2_n2", "cr", "cr_limit",
           "cr_critical", "tau_n", "tau_inf", "tau_law", "tau_law_valid"},
          {}};
  Table o{"oracle",
          {"alpha", "d_ratio", "n", "energy_exact", "energy_adiabatic", "energy_relative_error", "sx_n_exact",
           "sx_n_adiabatic", "tau_exact", "tau_adiabatic", "cutoff"},
          {}};
  for (double a : *c.alphas) {
    const DickeParams p = DickeParams::from_alpha(n, c.delta, d, a);
    const GroundState gs = ground_state(p.uniaxial(), c.solver());
    const SpinMoments s = dicke_moments(gs.wavefunction, p);
    std::optional<double> cr_limit, cr_critical, law;
    Cell law_valid = std::string();
    if (a < dicke_alpha_limit(d)) cr_limit = dicke_concurrence_thermodynamic(a, d);
    if (a == 1.0) {
      cr_critical = dicke_concurrence_critical(n, d);
      const TangleScaling ts = tangle_critical_scaling(n, d);
      law = ts.value;
      law_valid = std::int64_t{ts.below_validity ? 0 : 1};
    }
    const double tau = qubit_field_tangle(gs.wavefunction, p);
    t.add_row({a, d, std::int64_t{n}, std::int64_t{p.in_adiabatic_regime() ? 1 : 0}, s.sx / nn, s.sz2 / (nn * nn),
               s.sx2 / (nn * nn), s.sy2 / (nn * nn), dicke_rescaled_concurrence(gs.wavefunction, a, d).rescaled,
               opt_cell(cr_limit), opt_cell(cr_critical), tau, tangle_thermodynamic(a, d), opt_cell(law), law_valid});
    if (c.oracle) {
      const DickeOracleResult r = exact_dicke_oracle(p, c.cutoff);
      o.add_row({a, d, std::int64_t{n}, r.energy, gs.energy, std::abs(gs.energy - r.energy) / std::abs(r.energy),
                 r.moments.sx / nn, s.sx / nn, r.tangle, tau, std::int64_t{r.cutoff}});
    }
  }
  doc.tables.push_back(std::move(t));
  if (c.oracle) doc.tables.push_back(std::move(o));
  return doc;
}

Document cmd_quartic(const RunConfig& c) {
  Document doc = new_document(c);
  const QuarticConstants& k = default_quartic_constants();
  Table constants{"constants", {"beta0", "beta1", "k"}, {}};
  constants.add_row({k.beta0, k.beta1, k.k});
  Table spectrum{"spectrum", {"zeta", "e0"}, {}};
  std::vector<double> zetas = c.zetas.value_or(std::vector<double>{-4, -3, -2, -1, 0, 1, 2, 3, 4});
  for (double z : zetas) spectrum.add_row({z, quartic_ground(z).e0});
  doc.tables = {std::move(constants), std::move(spectrum)};
  return doc;
}

Document cmd_scaling(const RunConfig& c) {
  Document doc = new_document(c);
  const Observable obs = parse_observable(c.observable.value_or("sz2"));
  const std::vector<int> grid = n_grid(c, 512, 8192);
  SweepParams params;
  params.alpha = c.alphas ? c.alphas->front() : 1.0;
  params.delta = c.delta;
  params.epsilon = c.epsilon;
  params.d_ratio = c.d_ratio;
  params.solver = c.solver();
  const SweepTable table = sweep(obs, grid, params, c.workers);

  Table rows{"sweep", {"n", std::string(observable_name(obs))}, {}};
  for (const SweepRow& r : table.rows) rows.add_row({std::int64_t{r.n_spins}, r.value});
  const FitWindow window{c.fit_min.value_or(grid.front()), c.fit_max.value_or(grid.back())};
  const PowerLawFit fit = fit_power_law(table, window);
  Table f{"fit", {"observable", "alpha", "exponent", "prefactor", "prefactor_2n", "residual", "n_min", "n_max", "points"}, {}};
  f.add_row({std::string(observable_name(obs)), params.alpha, fit.exponent, fit.prefactor, fit.prefactor_2n, fit.residual,
             std::int64_t{fit.window.n_min}, std::int64_t{fit.window.n_max}, static_cast<std::int64_t>(fit.points)});
  doc.tables = {std::move(rows), std::move(f)};
  return doc;
}

Document figure_wavefunctions(const RunConfig& c) {
  Document doc = new_document(c);
  const int n = c.n.value_or(200);
  for (double a : c.alphas.value_or(std::vector<double>{0.3, 1.3})) {
    const UniaxialParams p{n, c.delta, a, 0.0};
    const Wavefunction exact = ground_state(p, c.solver()).wavefunction;
    const Wavefunction cont = gaussian_wavefunction(p);
    std::ostringstream name;
    name << "alpha=" << format_number(a);
    Table t{name.str(), {"m", "phi_exact", "phi_continuum"}, {}};
    for (std::size_t k = 0; k < exact.amps.size(); ++k) {
      t.add_row({std::int64_t{ladder_m(n, k)}, exact.amps[k], cont.amps[k]});
    }
    doc.tables.push_back(std::move(t));
  }
  return doc;
}

Document figure_critical_moments(const RunConfig& c) {
  Document doc = new_document(c);
  const std::vector<int> grid = n_grid(c, 16, 8192);
  SweepParams params;
  params.alpha = 1.0;
  params.delta = c.delta;
  params.solver = c.solver();
  const SweepTable sz2 = sweep(Observable::sz2, grid, params, c.workers);
  const SweepTable sy2 = sweep(Observable::sy2, grid, params, c.workers);
  Table t{"critical_moments", {"n", "sz2_n2", "sz2_formula", "sy2_n2", "sy2_formula"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double nn = grid[i];
    const SpinMoments f = critical_moments(grid[i]);
    t.add_row({std::int64_t{grid[i]}, sz2.rows[i].value, f.sz2 / (nn * nn), sy2.rows[i].value, f.sy2 / (nn * nn)});
  }
  doc.tables = {std::move(t)};
  return doc;
}

Document figure_dicke_curves(const RunConfig& c, bool tangle) {
  Document doc = new_document(c);
  const double d = c.d_ratio.value_or(0.1);
  const std::vector<int> sizes = c.ngrid.value_or(tangle ? std::vector<int>{6, 10, 20, 100} : std::vector<int>{10, 20, 40, 100});
  const std::string prefix = tangle ? "tau_n" : "cr_n";
  Table t{tangle ? "tangle" : "concurrence", {"alpha"}, {}};
  for (int n : sizes) t.columns.push_back(prefix + std::to_string(n));
  t.columns.push_back(tangle ? "tau_inf" : "cr_inf");
  for (double a : c.alphas.value_or(default_alpha_sweep())) {
    std::vector<Cell> row{a};
    for (int n : sizes) {
      const Wavefunction wf = ground_state(UniaxialParams{n, c.delta, a, 0.0}, c.solver()).wavefunction;
      row.push_back(tangle ? qubit_field_tangle(wf, a, d) : dicke_rescaled_concurrence(wf, a, d).rescaled);
    }
    if (tangle) {
      row.push_back(tangle_thermodynamic(a, d));
    } else {
      row.push_back(a < dicke_alpha_limit(d) ? Cell(dicke_concurrence_thermodynamic(a, d)) : Cell(std::string()));
    }
    t.add_row(std::move(row));
  }
  doc.tables = {std::move(t)};
  return doc;
}

Document cmd_figures(const RunConfig& c) {
  switch (*c.fig) {
    case 1: return figure_wavefunctions(c);
    case 2: return figure_critical_moments(c);
    case 3: return figure_dicke_curves(c, false);
    default: return figure_dicke_curves(c, true);
  }
}

void emit(const RunConfig& c, const Document& doc, std::ostream& out) {
  const auto write = [&](std::ostream& os) {
    if (c.format == "json") {
      write_json(os, doc);
    } else {
      write_csv(os, doc);
    }
  };
  if (!c.out) {
    write(out);
    return;
  }
  std::ofstream file(*c.out, std::ios::binary);
  if (!file) fail("cannot open output file '" + *c.out + "'");
  write(file);
  if (!file) fail("failed writing '" + *c.out + "'");
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  std::vector<int> ids = c.criteria.value_or(std::vector<int>{});
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> results;
  bool all = true;
  for (int id : ids) {
    results.push_back(run_criterion(id, c.workers));
    all = all && results.back().passed();
    out << summary_line(results.back()) << std::endl;
  }
  out << '\n';
  for (const CriterionResult& r : results) {
    for (const std::string& line : detail_lines(r)) out << line << '\n';
  }

  if (c.out) {
    Document doc = new_document(c);
    Table t{"acceptance", {"criterion", "title", "check", "status", "detail"}, {}};
    for (const CriterionResult& r : results) {
      for (const CheckResult& chk : r.checks) {
        // Wall-clock details would make the report differ between runs.
        t.add_row({std::int64_t{r.id}, r.title, chk.label, std::string(chk.passed ? "pass" : "fail"),
                   chk.timing ? std::string("timed") : chk.detail});
      }
    }
    doc.metadata["passed"] = all;
    doc.tables = {std::move(t)};
    emit(c, doc, out);
  }
  return all ? kExitOk : kExitAcceptanceFailure;
}

}  // namespace

SolverOptions RunConfig::solver() const {
  SolverOptions s;
  if (tol) s.rel_tol = *tol;
  if (max_iter) s.max_iterations = *max_iter;
  return s;
}

void RunConfig::validate() const {
  const std::string& c = command;
  require(std::find(kCommands.begin(), kCommands.end(), c) != kCommands.end(), "unknown command '" + c + "'");
  require(format == "csv" || format == "json", "--format must be csv or json");
  require(workers >= 1, "--workers must be >= 1");
  if (tol) require(*tol > 0.0 && std::isfinite(*tol), "--tol must be positive");
  if (max_iter) require(*max_iter >= 1, "--max-iter must be >= 1");
  if (out) require(!out->empty(), "--out needs a path");
  require(std::isfinite(delta) && delta >= 0.0, "--delta must be finite and >= 0");
  require(std::isfinite(epsilon), "--epsilon must be finite");

  if (alphas) {
    require(!alphas->empty(), "--alpha needs at least one value");
    for (double a : *alphas) require(std::isfinite(a) && a >= 0.0, "--alpha values must be finite and >= 0");
  }

  if (d_ratio) {
    require(uses_d(*this), "--d-ratio only applies to dicke, figures --fig 3/4 and scaling of tau_n or dicke_cr");
    require(std::isfinite(*d_ratio) && *d_ratio > 0.0, "--d-ratio must be > 0");
  }

  const bool grid_cmd = uses_grid(*this) || dicke_figure(*this);
  if (!grid_cmd) {
    forbid(nmin, "--nmin", c);
    forbid(nmax, "--nmax", c);
    forbid(ngrid, "--ngrid", c);
  }
  if (ngrid) {
    require(!nmin && !nmax, "--ngrid cannot be combined with --nmin/--nmax");
    require(!ngrid->empty(), "--ngrid needs at least one value");
    for (std::size_t i = 0; i < ngrid->size(); ++i) {
      require((*ngrid)[i] >= 1, "--ngrid values must be >= 1");
      if (i) require((*ngrid)[i] > (*ngrid)[i - 1], "--ngrid must be strictly increasing");
    }
  }
  if (nmin) require(*nmin >= 1, "--nmin must be >= 1");
  if (nmax) require(*nmax >= 1, "--nmax must be >= 1");

  if (c != "scaling") {
    forbid(observable, "--observable", c);
    forbid(fit_min, "--fit-min", c);
    forbid(fit_max, "--fit-max", c);
  }
  if (c != "figures") forbid(fig, "--fig", c);
  if (c != "entangle") forbid(block, "--block", c);
  if (c != "quartic") forbid(zetas, "--zeta", c);
  if (c != "dicke") {
    require(!oracle, "--oracle only applies to 'dicke'");
    forbid(cutoff, "--cutoff", c);
  }
  if (c != "verify") forbid(criteria, "--criterion", c);

  if (c == "ground" || c == "moments" || c == "entangle" || c == "dicke") {
    require(n.has_value(), "'" + c + "' needs --n");
    require(*n >= (c == "ground" || c == "moments" ? 1 : 2), "--n is too small for '" + c + "'");
    require(alphas.has_value(), "'" + c + "' needs --alpha");
  }
  if (c == "entangle" && block) require(*block >= 1 && *block <= *n - 1, "--block must lie in [1, N-1]");
  if (c == "dicke") {
    require(d_ratio.has_value(), "'dicke' needs --d-ratio");
    require(delta > 0.0, "'dicke' needs --delta > 0");
    require(epsilon == 0.0, "'dicke' assumes --epsilon 0");
    if (cutoff) {
      require(oracle, "--cutoff needs --oracle");
      require(*cutoff >= 1, "--cutoff must be >= 1");
    }
  }

  if (c == "quartic" || c == "verify" || c == "scaling") forbid(n, "--n", c);
  if (c == "quartic" || c == "verify") {
    forbid(alphas, "--alpha", c);
    require(delta == 1.0 && epsilon == 0.0, "'" + c + "' takes no model parameters");
  }
  if (c == "quartic" && zetas) {
    for (double z : *zetas) require(std::isfinite(z), "--zeta values must be finite");
  }
  if (c == "verify" && criteria) {
    for (int id : *criteria) require(id >= 1 && id <= kCriterionCount, "--criterion values must lie in 1..9");
  }

  if (c == "scaling") {
    if (alphas) require(alphas->size() == 1, "'scaling' takes a single --alpha");
    if (observable) {
      try {
        (void)parse_observable(*observable);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    if (uses_d(*this)) require(d_ratio.has_value(), "observable '" + *observable + "' needs --d-ratio");
    if (!ngrid) require(nmin.value_or(512) <= nmax.value_or(8192), "--nmin must not exceed --nmax");
  }

  if (c == "figures") {
    require(fig.has_value(), "'figures' needs --fig 1..4");
    require(*fig >= 1 && *fig <= 4, "--fig must be 1, 2, 3 or 4");
    require(epsilon == 0.0, "figures are drawn at --epsilon 0");
    if (*fig == 1) {
      if (n) require(*n >= 1, "--n must be >= 1");
      if (alphas) {
        for (double a : *alphas) require(a != 1.0, "figure 1 has no continuum curve at alpha = 1");
      }
    } else {
      forbid(n, "--n", "figures --fig " + std::to_string(*fig));
    }
    if (*fig == 2) {
      forbid(alphas, "--alpha", "figures --fig 2");
      if (!ngrid) require(nmin.value_or(16) <= nmax.value_or(8192), "--nmin must not exceed --nmax");
    }
    if (*fig >= 3) {
      require(!nmin && !nmax, "figures 3 and 4 take their sizes from --ngrid");
      if (ngrid) require(ngrid->front() >= 2, "figures 3 and 4 need N >= 2");
      require(delta > 0.0, "figures 3 and 4 need --delta > 0");
    }
  }
}

ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collective uniaxial spin model and its adiabatic Dicke mapping", "collspin"};
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "Flat key=value file whose keys mirror the long flags");
  app.require_subcommand(1);

  RunConfig cfg;
  double tol = 0.0, d_ratio = 0.0;
  int n = 0, nmin = 0, nmax = 0, max_iter = 0, fit_min = 0, fit_max = 0, fig = 0, block = 0, cutoff = 0;
  std::vector<double> alphas, zetas;
  std::vector<int> ngrid, criteria;
  std::string out_path, observable;

  auto* o_n = app.add_option("--n", n, "Number of spins N");
  auto* o_alpha = app.add_option("--alpha", alphas, "alpha = 4g/delta; comma-separated list")->delimiter(',');
  app.add_option("--delta", cfg.delta, "Qubit splitting delta (default 1)");
  app.add_option("--epsilon", cfg.epsilon, "Level asymmetry epsilon (default 0)");
  auto* o_d = app.add_option("--d-ratio", d_ratio, "D = delta/omega for the Dicke mapping");
  auto* o_nmin = app.add_option("--nmin", nmin, "Smallest N of a power-of-two grid");
  auto* o_nmax = app.add_option("--nmax", nmax, "Largest N of a power-of-two grid");
  auto* o_ngrid = app.add_option("--ngrid", ngrid, "Explicit N list, comma-separated")->delimiter(',');
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  auto* o_out = app.add_option("--out", out_path, "Write output to this file instead of stdout");
  auto* o_tol = app.add_option("--tol", tol, "Relative residual tolerance of the eigensolver");
  auto* o_iter = app.add_option("--max-iter", max_iter, "Inverse-iteration sweep cap");
  app.add_option("--workers", cfg.workers, "Worker threads for N sweeps");
  auto* o_obs = app.add_option("--observable", observable, "scaling: energy, sx, one_minus_sx, sz2, sx2, sy2, tau1, cr, one_minus_cr, tau_n, dicke_cr");
  auto* o_fmin = app.add_option("--fit-min", fit_min, "scaling: smallest N in the fit window");
  auto* o_fmax = app.add_option("--fit-max", fit_max, "scaling: largest N in the fit window");
  auto* o_fig = app.add_option("--fig", fig, "figures: figure number 1..4");
  auto* o_block = app.add_option("--block", block, "entangle: block size L (default N/2)");
  auto* o_zeta = app.add_option("--zeta", zetas, "quartic: zeta values, comma-separated")->delimiter(',');
  app.add_flag("--oracle", cfg.oracle, "dicke: also solve the full qubit-oscillator model");
  auto* o_cut = app.add_option("--cutoff", cutoff, "dicke --oracle: boson cutoff to start from");
  auto* o_crit = app.add_option("--criterion", criteria, "verify: run only these criteria")->delimiter(',');

  const std::vector<std::pair<std::string, std::string>> subcommands{
      {"ground", "Ground-state energy and wavefunction"},
      {"moments", "Exact, analytic and critical spin moments"},
      {"entangle", "One-tangle, concurrence and block linear entropy"},
      {"dicke", "Adiabatic Dicke observables, optionally against the full model"},
      {"quartic", "Critical quartic oscillator constants and spectrum"},
      {"scaling", "Finite-size sweep and power-law fit"},
      {"figures", "Plot data: wavefunctions, critical moments, Dicke concurrence and tangle"},
      {"verify", "Run the acceptance suite"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitOk : kExitConfigError};
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (*o_n) cfg.n = n;
  if (*o_alpha) cfg.alphas = alphas;
  if (*o_d) cfg.d_ratio = d_ratio;
  if (*o_nmin) cfg.nmin = nmin;
  if (*o_nmax) cfg.nmax = nmax;
  if (*o_ngrid) cfg.ngrid = ngrid;
  if (*o_out) cfg.out = out_path;
  if (*o_tol) cfg.tol = tol;
  if (*o_iter) cfg.max_iter = max_iter;
  if (*o_obs) cfg.observable = observable;
  if (*o_fmin) cfg.fit_min = fit_min;
  if (*o_fmax) cfg.fit_max = fit_max;
  if (*o_fig) cfg.fig = fig;
  if (*o_block) cfg.block = block;
  if (*o_zeta) cfg.zetas = zetas;
  if (*o_cut) cfg.cutoff = cutoff;
  if (*o_crit) cfg.criteria = criteria;
  return {std::move(cfg), kExitOk};
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    Document doc;
    if (cfg.command == "ground") doc = cmd_ground(cfg);
    else if (cfg.command == "moments") doc = cmd_moments(cfg);
    else if (cfg.command == "entangle") doc = cmd_entangle(cfg);
    else if (cfg.command == "dicke") doc = cmd_dicke(cfg);
    else if (cfg.command == "quartic") doc = cmd_quartic(cfg);
    else if (cfg.command == "scaling") doc = cmd_scaling(cfg);
    else doc = cmd_figures(cfg);
    emit(cfg, doc, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SweepError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const GridTooSmallError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const CutoffNotConvergedError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ParseOutcome parsed = parse_command_line(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace collspin
