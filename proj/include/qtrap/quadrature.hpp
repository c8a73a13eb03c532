#pragma once

#include "qtrap/types.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtrap {

// Integral estimate together with its error bound and the number of
// subintervals the adaptive refinement ended up using.
struct QuadResult {
  complex value{};
  double error = 0.0;
  int intervals = 0;
};

// Thrown when the interval budget runs out before the requested tolerance is
// met; carries the best estimate accumulated so far.
class quadrature_error : public std::runtime_error {
public:
  quadrature_error(const std::string& what, complex partial, double error)
      : std::runtime_error(what), partial(partial), error(error) {}

  complex partial;
  double error;
};

using Integrand = std::function<complex(double)>;

// Globally adaptive Gauss-Kronrod 7/15 integration of f over [a, b] to
// absolute tolerance tol.  Deterministic: the subdivision order depends only
// on (f, a, b, tol), never on timing or thread scheduling.
QuadResult adaptive_quad(const Integrand& f, double a, double b, double tol,
                         int max_intervals = 20000);

// Same, but with the range pre-split at the given interior break points
// (kinks or sharp peaks of f).  Breaks outside (a, b) are ignored.
QuadResult adaptive_quad_split(const Integrand& f, double a, double b,
                               const std::vector<double>& breaks, double tol,
                               int max_intervals = 20000);

} // namespace qtrap
