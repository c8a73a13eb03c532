#pragma once

#include "qtrap/grid.hpp"
#include "qtrap/types.hpp"

namespace qtrap {

// Bound state of a single delta well -2 mu delta(x - center):
// sqrt(mu) exp(-mu |x - center|), energy -mu^2.
struct BoundState1W {
  double center = 0.0;
  double strength = 1.0;
  double energy = -1.0;
  double decay_rate = 1.0;
};

BoundState1W make_bound_state(double center, double mu);

// Pre-switch bound state of the unit well at x = -l:  exp(-|x+l| + i t).
complex initial_state(double x, double l, double t);

// Bound state of the strength-mu well at the origin:
// sqrt(mu) exp(-mu |x| + i mu^2 t).  Requires mu > 0.
complex final_state(double x, double mu, double t);

// Probability that the particle stays trapped when the unit well at -l is
// instantly replaced by a well of strength mu at the origin:
//
//   P(mu) = 4 mu (mu e^{-l} - e^{-mu l})^2 / (mu^2 - 1)^2,
//
// with the removable mu = 1 singularity evaluated through its series form;
// the limit value is (1+l)^2 e^{-2l}.  Requires mu >= 0, l >= 0; the mu = 0
// limit is 0 (no well, nothing retained).
double retention_probability(double mu, double l);

struct OptimalStrength {
  double mu_max = 0.0;
  double p_max = 0.0;
};

// Interior maximizer of retention_probability(., l) over mu, by coarse
// geometric scan plus golden-section refinement (relative tolerance 1e-8).
OptimalStrength optimal_strength(double l);

// Exact post-switch wavefunction at (x, t > 0) for the instantaneous hop:
// the unit well at -l disappears at t = 0 and a well of strength mu >= 0
// appears at the origin.  mu = 0 is free spreading; near mu = 1 the
// 1/(1 - mu) coefficients of the general form become singular and a
// dedicated symmetric-case branch takes over (see implementation notes).
complex evolve_after_switch(double x, double t, double mu, double l);

// Large-t asymptotic form of the freely spreading packet (mu = 0).  Valid
// only for t >> |x + l|; exposed for validation, never used as a compute
// path.
complex free_asymptotic(double x, double t, double l);

// Long-time limit of the symmetric-hop (mu = 1) wavefunction at the origin:
// (1 + l) exp(i t - l).
complex asymptotic_center_value(double l, double t);

struct KernelResult {
  complex value{};
  bool coarse_grid_warning = false;  // initial.grid.dx > 0.05
};

// Independent propagation path: Simpson-rule integration of the exact
// single-well Green's function against a sampled initial profile.  Shares no
// algebra with evolve_after_switch beyond the special functions themselves.
// Requires t > 0.
KernelResult propagate_kernel(const WaveField& initial, double mu, double t,
                              double x);

// Retrapping amplitude for the delayed re-switch: the unit well at -l is
// removed at t = 0, the packet spreads freely for a time tau, then a unit
// well at the origin is switched on.  A(0) = (1+l) e^{-l}.
complex delayed_amplitude(double tau, double l);

struct DelayOptimum {
  double tau_star = 0.0;
  double p_star = 0.0;
};

// Global maximizer of |delayed_amplitude(tau, l)|^2 over
// tau in [0, max(10 l^2, 1)], by grid scan plus golden-section refinement
// (absolute tolerance 1e-6 in tau).
DelayOptimum delay_optimum(double l);

} // namespace qtrap
