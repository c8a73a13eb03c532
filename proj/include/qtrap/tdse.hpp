#pragma once

#include "qtrap/grid.hpp"

#include <vector>

namespace qtrap {

// One attractive delta well  -2 strength delta(x - position).
struct Well {
  double position = 0.0;
  double strength = 1.0;
};

// Piecewise-constant potential configuration active on [t_start, t_end).
struct ScheduleStep {
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<Well> wells;
};

struct EvolveOptions {
  // States are recorded at these times (each must lie within the evolution
  // window); time stepping is aligned so every snapshot lands exactly on a
  // step boundary.
  std::vector<double> snapshot_times;

  // |psi|^2 mass in the outer 10% of the domain above which the result is
  // flagged as boundary-contaminated.
  double boundary_mass_threshold = 1e-6;
};

struct EvolveResult {
  WaveField psi;                     // state at t_final
  std::vector<WaveField> snapshots;  // requested snapshots, in time order
  double norm_drift = 0.0;           // |norm(t_final) - norm(t_start)|
  double boundary_mass = 0.0;        // final |psi|^2 mass in the outer 10%
  double edge_density = 0.0;         // max |psi|^2 within 5 of a boundary
  bool boundary_warning = false;     // mass above threshold, or density
                                     // > 1e-8 within 5 of a boundary
};

// Crank-Nicolson evolution of psi0 through the schedule up to t_final.
// Unconditionally stable and norm-preserving; each delta well enters as the
// on-node potential value -2 strength / dx; schedule switches and snapshot
// times are aligned exactly to step boundaries (dt is shrunk per block as
// needed, never stretched).  Throws std::invalid_argument on grid/schedule
// inconsistencies (wells off the node lattice, gaps in coverage, ...).
EvolveResult tdse_evolve(const WaveField& psi0,
                         const std::vector<ScheduleStep>& schedule,
                         double t_final, const EvolveOptions& options = {});

struct EigenPair {
  double energy = 0.0;
  WaveField state;  // unit trapezoid norm, sign-fixed deterministically
};

// Lowest eigenstates of the finite-difference Hamiltonian with the given
// wells; only bound states (E < 0) are returned, at most n_states of them.
std::vector<EigenPair> fd_eigenstates(const std::vector<Well>& wells,
                                      const Grid& grid, int n_states);

} // namespace qtrap
