#pragma once

#include <string>
#include <vector>

namespace qtrap {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;    // measured numbers, one line
  double seconds = 0.0;
};

struct ValidationOptions {
  // Default evolution-oracle grid for the analytic-vs-numeric comparisons.
  double domain_half = 200.0;
  double dx = 0.005;
  double dt = 2.5e-4;
};

// Runs the full analytic-vs-oracle validation suite (ten numbered checks)
// and returns one result per check.  Shared numerical artifacts (the long
// Crank-Nicolson evolution) are computed once and reused across checks.
std::vector<CheckResult> run_acceptance_checks(const ValidationOptions& opt = {});

// Prints the pass/fail table to stdout and returns the number of failures.
int report_checks(const std::vector<CheckResult>& results);

} // namespace qtrap
