#pragma once

#include "qtrap/types.hpp"

#include <functional>
#include <vector>

namespace qtrap {

// Uniform spatial grid plus the time step used by the evolution oracle.
// Well positions must coincide with grid nodes so the on-node delta
// representation keeps them exact.
struct Grid {
  double x_min = -200.0;
  double x_max = 200.0;
  double dx = 0.005;
  double dt = 2.5e-4;

  int nodes() const;
  double x(int i) const { return x_min + i * dx; }

  // Index of the node hosting x0; throws std::invalid_argument if x0 does
  // not lie on a node (within a 1e-8 absolute tolerance).
  int node_index(double x0) const;
  bool on_node(double x0) const;

  // Throws std::invalid_argument unless the span is an integer number
  // (>= 100) of steps and dx, dt are positive.
  void validate() const;
};

// Complex wavefunction sampled on a grid.
struct WaveField {
  Grid grid;
  std::vector<complex> values;
  double time = 0.0;

  // Trapezoid-rule L2 norm (not squared).
  double norm() const;
};

// Trapezoid-rule inner product  integral conj(f) g dx; grids must be
// identical or std::invalid_argument is thrown.
complex overlap(const WaveField& f, const WaveField& g);

// Sample an arbitrary profile on the grid.  With renormalize = true the
// samples are rescaled to exact unit trapezoid norm, so that sampling error
// of order dx^2 does not leak into norm-sensitive comparisons.
WaveField sample_profile(const Grid& g, const std::function<complex(double)>& f,
                         bool renormalize);

// Bound-state profiles sampled on the grid, unit-normalized: the unit-
// strength state exp(-|x+l|) of the well at -l, and the strength-mu state
// sqrt(mu) exp(-mu|x|) of the well at the origin.
WaveField sample_initial_state(const Grid& g, double l);
WaveField sample_final_state(const Grid& g, double mu);

} // namespace qtrap
