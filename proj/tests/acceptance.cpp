// Acceptance gate: runs the ten analytic-vs-oracle validation criteria on
// the default (production) oracle grid and prints one pass/fail line per
// criterion.  Exit status is the number of failed criteria.

#include "qtrap/validate.hpp"

int main() {
  return qtrap::report_checks(qtrap::run_acceptance_checks());
}
