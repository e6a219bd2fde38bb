#pragma once

#include "collspin/spin_core.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace collspin {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitAcceptanceFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverFailure = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a command needs. Optional fields stay empty unless given on the
// command line or in a config file, so validation can reject options that do
// not apply to the chosen command.
struct RunConfig {
  std::string command;

  std::optional<int> n;
  std::optional<std::vector<double>> alphas;
  double delta = 1.0;
  double epsilon = 0.0;
  std::optional<double> d_ratio;

  std::optional<int> nmin;
  std::optional<int> nmax;
  std::optional<std::vector<int>> ngrid;

  std::string format = "csv";
  std::optional<std::string> out;
  std::optional<double> tol;
  std::optional<int> max_iter;
  int workers = 1;

  std::optional<std::string> observable;  // scaling
  std::optional<int> fit_min;             // scaling
  std::optional<int> fit_max;             // scaling
  std::optional<int> fig;                 // figures
  std::optional<int> block;               // entangle
  std::optional<std::vector<double>> zetas;  // quartic
  bool oracle = false;                    // dicke
  std::optional<int> cutoff;              // dicke --oracle
  std::optional<std::vector<int>> criteria;  // verify

  // Throws ConfigError describing the first inconsistency.
  void validate() const;
  SolverOptions solver() const;
};

struct ParseOutcome {
  std::optional<RunConfig> config;  // empty when parsing ended early
  int exit_code = kExitOk;          // meaningful only when config is empty
};

// CLI11 front end. Prints help or parse errors to the given streams.
ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Validates, runs, and writes results to cfg.out (or `out` when unset).
// Exit codes: 0 success, 1 acceptance failure, 2 config error, 3 solver failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace collspin
