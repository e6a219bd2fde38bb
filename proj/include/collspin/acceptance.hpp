#pragma once

// The acceptance suite: nine criteria, each made of named checks with pinned
// tolerances. Shared by `collspin verify` and the acceptance test binary.

#include <string>
#include <vector>

namespace collspin {

struct CheckResult {
  std::string label;
  bool passed = false;
  std::string detail;  // measured value against its bound
  bool timing = false;  // detail holds a wall-clock measurement
};

struct CriterionResult {
  int id = 0;
  std::string title;
  double seconds = 0.0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

inline constexpr int kCriterionCount = 9;

// Throws std::out_of_range for ids outside 1..9. Library exceptions raised
// while evaluating a criterion are caught and recorded as a failed check.
CriterionResult run_criterion(int id, int workers = 1);
std::vector<CriterionResult> run_acceptance(int workers = 1);

// "PASS  3  1/N energy formulas  (0.12 s)"
std::string summary_line(const CriterionResult& r);
// One indented line per check.
std::vector<std::string> detail_lines(const CriterionResult& r);

}  // namespace collspin
