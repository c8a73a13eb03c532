#pragma once

#include "qtrap/types.hpp"

namespace qtrap {

// Amplitude 4/(4 + k^2) for the particle to remain in the unit-strength
// bound state at the origin after an instantaneous momentum kick k
// (multiplication of the wavefunction by exp(ikx)).
double kick_retention_amplitude(double k);

// |amplitude|^2; even in k, decreasing in |k|, equal to 1 at k = 0.
double kick_retention(double k);

// Amplitude of the kick-induced even <-> odd transition in the double well
// with separation l > 1 (both states must exist):  the closed-form Fourier
// overlap  integral exp(ikx) phi_even(x) phi_odd(x) dx.
complex kick_transition_amplitude(double k, double l);

// Transition probability |amplitude|^2; exactly symmetric under k -> -k and
// zero at k = 0 by orthogonality.
double kick_transition(double k, double l);

struct TransitionOptimum {
  double k2_max = 0.0;   // kinetic energy k^2 at the probability maximum
  double p_max = 0.0;
  double delta_e = 0.0;  // level spacing alpha_even^2 - alpha_odd^2
};

// Global maximizer of kick_transition over k^2 in (0, (4 pi / l)^2], which
// covers the first two oscillations of the overlap.
TransitionOptimum transition_optimum(double l);

} // namespace qtrap
