#pragma once

#include "qtrap/types.hpp"

#include <optional>
#include <stdexcept>

namespace qtrap {

enum class Parity { even, odd };

// The odd bound state of the symmetric double well exists only for
// separations l > 1; asking for it below that threshold raises this.
class no_bound_state_error : public std::domain_error {
public:
  explicit no_bound_state_error(const std::string& what)
      : std::domain_error(what) {}
};

// Decay rate alpha of the bound states of two unit wells at x = 0 and
// x = -l, from the transcendental matching conditions
//
//   even:  alpha (1 + tanh(alpha l / 2)) = 2,   root in (1, 2],
//   odd:   alpha coth(alpha l / 2) = 2 - alpha, root in (0, 1), l > 1 only.
//
// Solved by bisection on a sign-certified bracket to absolute tolerance
// better than 1e-12 in the residual.
double solve_alpha(double l, Parity parity);

struct DwpState {
  Parity parity = Parity::even;
  double alpha = 0.0;       // decay rate
  double norm_const = 0.0;  // C making the piecewise profile unit-norm
  double energy = 0.0;      // -alpha^2
  double separation = 0.0;  // l
};

DwpState bound_state(double l, Parity parity);

// The normalized piecewise-exponential bound-state profile at x.
double dwp_wavefunction(const DwpState& state, double x);

struct DwpSpectrum {
  double e_ground = 0.0;
  std::optional<double> e_excited;  // absent for l <= 1
};

DwpSpectrum spectrum(double l);

struct RetrapProbabilities {
  double p_even = 0.0;
  std::optional<double> p_odd;  // absent for l <= 1
};

// Probabilities that a particle bound in the unit well at -l is caught in
// the even/odd double-well state when a second unit well appears at the
// origin.  Overlaps are evaluated in closed form (piecewise exponential
// integrals); quadrature serves only as a test oracle.
RetrapProbabilities retrap_probabilities(double l);

} // namespace qtrap
