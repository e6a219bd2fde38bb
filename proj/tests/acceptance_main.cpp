// Prints one PASS/FAIL line per acceptance criterion, then the individual
// checks. Exits nonzero when any criterion fails.

#include "collspin/acceptance.hpp"

#include <iostream>
#include <thread>

int main() {
  const int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto results = collspin::run_acceptance(workers);
  bool all = true;
  for (const auto& r : results) {
    std::cout << collspin::summary_line(r) << '\n';
    all = all && r.passed();
  }
  std::cout << '\n';
  for (const auto& r : results) {
    for (const auto& line : collspin::detail_lines(r)) std::cout << line << '\n';
  }
  return all ? 0 : 1;
}
