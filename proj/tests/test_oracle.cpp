// The numerical oracle itself: grid bookkeeping, Crank-Nicolson evolution
// (unitarity, stationarity, schedule handling, boundary diagnostics), and
// the finite-difference eigensolver, checked against closed-form energies
// and the analytic propagator.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtrap/double_well.hpp"
#include "qtrap/single_well.hpp"
#include "qtrap/tdse.hpp"

#include <cmath>

using namespace qtrap;

TEST_CASE("grid bookkeeping") {
  Grid g{-1.0, 1.0, 0.01, 1e-3};
  g.validate();
  CHECK(g.nodes() == 201);
  CHECK(g.x(0) == -1.0);
  CHECK(g.x(200) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.node_index(0.5) == 150);
  CHECK(g.on_node(0.5));
  CHECK_FALSE(g.on_node(0.505));
  CHECK_THROWS_AS(g.node_index(0.5051), std::invalid_argument);

  CHECK_THROWS_AS((Grid{-1.0, 1.0, -0.01, 1e-3}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS((Grid{-1.0, 1.003, 0.01, 1e-3}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS((Grid{0.0, 0.5, 0.01, 1e-3}).validate(),
                  std::invalid_argument);  // only 50 steps
  CHECK_THROWS_AS((Grid{-1.0, 1.0, 0.01, 0.0}).validate(),
                  std::invalid_argument);
}

TEST_CASE("norms, overlaps, and sampling") {
  Grid g{-30.0, 30.0, 0.01, 1e-3};
  const WaveField f = sample_profile(
      g, [](double x) { return complex(std::exp(-std::fabs(x)), 0.0); },
      false);
  CHECK(std::fabs(f.norm() - 1.0) < 1e-4);  // trapezoid error at the cusp
  CHECK(std::fabs(overlap(f, f).real() - f.norm() * f.norm()) <
        1e-12 * f.norm());

  const WaveField fr = sample_profile(
      g, [](double x) { return complex(std::exp(-std::fabs(x)), 0.0); },
      true);
  CHECK(std::fabs(fr.norm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(
      sample_profile(g, [](double) { return complex(0.0, 0.0); }, true),
      std::invalid_argument);

  const WaveField psi0 = sample_initial_state(g, 1.0);
  CHECK(std::fabs(psi0.norm() - 1.0) < 1e-12);
  const WaveField fin = sample_final_state(g, 3.0);
  CHECK(std::fabs(fin.norm() - 1.0) < 1e-12);
  CHECK(std::fabs(std::abs(fin.values[g.node_index(0.0)]) - std::sqrt(3.0)) <
        5e-3 * std::sqrt(3.0));

  Grid other{-30.0, 30.0, 0.02, 1e-3};
  const WaveField h = sample_initial_state(other, 1.0);
  CHECK_THROWS_AS(overlap(f, h), std::invalid_argument);
}

TEST_CASE("fd eigensolver: single delta well") {
  Grid g{-30.0, 30.0, 0.01, 1e-3};
  const auto states = fd_eigenstates({Well{0.0, 1.5}}, g, 3);
  REQUIRE(states.size() >= 1);
  // only bound states come back
  for (const EigenPair& s : states) CHECK(s.energy < 0.0);
  CHECK(std::fabs(states[0].energy + 2.25) < 5e-4);
  CHECK(std::fabs(states[0].state.norm() - 1.0) < 1e-10);
  // deterministic sign fix: positive at the peak
  CHECK(states[0].state.values[g.node_index(0.0)].real() > 0.0);
  const complex ov = overlap(states[0].state, sample_final_state(g, 1.5));
  CHECK(std::abs(ov) > 0.9995);

  // second-order convergence of the ground energy
  Grid coarse{-30.0, 30.0, 0.02, 1e-3};
  const auto cs = fd_eigenstates({Well{0.0, 1.5}}, coarse, 1);
  const double err_c = std::fabs(cs[0].energy + 2.25);
  const double err_f = std::fabs(states[0].energy + 2.25);
  CHECK(err_c / err_f > 3.0);
  CHECK(err_c / err_f < 5.0);

  CHECK_THROWS_AS(fd_eigenstates({Well{0.0, 1.0}}, g, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(fd_eigenstates({Well{0.0033, 1.0}}, g, 1),
                  std::invalid_argument);  // off-node well
}

TEST_CASE("fd eigensolver: double well matches the closed-form spectrum") {
  Grid g{-25.0, 25.0, 0.01, 1e-3};
  const std::vector<Well> wells{{0.0, 1.0}, {-2.0, 1.0}};
  const auto states = fd_eigenstates(wells, g, 5);
  REQUIRE(states.size() == 2);
  CHECK(std::fabs(states[0].energy - (-1.2295650725757953)) < 2e-4);
  CHECK(std::fabs(states[1].energy - (-0.63490957054704133)) < 2e-4);

  // parity about the midpoint x = -1
  const int ip = g.node_index(-1.0 + 1.3);
  const int im = g.node_index(-1.0 - 1.3);
  const complex ep = states[0].state.values[ip], em = states[0].state.values[im];
  CHECK(std::abs(ep - em) < 1e-3 * std::abs(ep));
  const complex op = states[1].state.values[ip], om = states[1].state.values[im];
  CHECK(std::abs(op + om) < 1e-3 * std::abs(op));

  // below the threshold separation only the even state is bound
  const auto single = fd_eigenstates({{0.0, 1.0}, {-0.8, 1.0}}, g, 5);
  CHECK(single.size() == 1);
}

TEST_CASE("stationary bound state acquires only the e^{-iEt} phase") {
  Grid g{-40.0, 40.0, 0.01, 5e-4};
  const WaveField psi0 = sample_final_state(g, 1.0);  // e^{-|x|}, E = -1
  const EvolveResult r =
      tdse_evolve(psi0, {{0.0, 10.0, {Well{0.0, 1.0}}}}, 10.0);
  CHECK(r.norm_drift < 1e-9);
  CHECK(r.boundary_mass < 1e-10);
  CHECK_FALSE(r.boundary_warning);
  const complex ov = overlap(psi0, r.psi);
  CHECK(std::abs(ov) > 0.999);
  // E = -1 means the phase advances as e^{+it}
  CHECK(std::abs(ov * std::exp(complex(0.0, -10.0)) - complex(1.0, 0.0)) <
        0.02);
}

TEST_CASE("free spreading matches the closed-form propagator") {
  Grid g{-100.0, 100.0, 0.01, 5e-4};
  const WaveField psi0 = sample_initial_state(g, 1.0);
  const EvolveResult r = tdse_evolve(psi0, {{0.0, 2.0, {}}}, 2.0);
  CHECK(r.norm_drift < 1e-9);
  double l2 = 0.0;
  for (int i = 0; i < g.nodes(); ++i) {
    const double da = std::norm(evolve_after_switch(g.x(i), 2.0, 0.0, 1.0));
    const double dg = std::norm(r.psi.values[i]);
    l2 += (da - dg) * (da - dg) * g.dx;
  }
  CHECK(std::sqrt(l2) < 1e-2);
}

TEST_CASE("splitting a block at an interior time changes nothing") {
  Grid g{-30.0, 30.0, 0.02, 1e-3};
  const WaveField psi0 = sample_initial_state(g, 1.0);
  const std::vector<Well> w{{0.0, 1.5}};
  const EvolveResult one = tdse_evolve(psi0, {{0.0, 1.0, w}}, 1.0);
  const EvolveResult two =
      tdse_evolve(psi0, {{0.0, 0.5, w}, {0.5, 1.0, w}}, 1.0);
  bool identical = true;
  for (int i = 0; i < g.nodes(); ++i)
    if (one.psi.values[i] != two.psi.values[i]) identical = false;
  CHECK(identical);
}

TEST_CASE("well hop mid-run with snapshots") {
  Grid g{-30.0, 30.0, 0.02, 1e-3};
  const WaveField psi0 = sample_initial_state(g, 1.0);
  EvolveOptions opt;
  opt.snapshot_times = {0.25, 0.5, 1.0};
  const EvolveResult r = tdse_evolve(
      psi0, {{0.0, 0.5, {Well{-1.0, 1.0}}}, {0.5, 1.0, {Well{0.0, 2.0}}}},
      1.0, opt);
  REQUIRE(r.snapshots.size() == 3);
  CHECK(r.snapshots[0].time == 0.25);
  CHECK(r.snapshots[1].time == 0.5);
  CHECK(r.snapshots[2].time == 1.0);
  CHECK(r.psi.time == 1.0);
  CHECK(r.norm_drift < 1e-9);
  // the state does evolve across the hop
  CHECK(std::abs(overlap(r.snapshots[1], r.snapshots[2])) < 0.9999);
}

TEST_CASE("schedule and argument validation") {
  Grid g{-30.0, 30.0, 0.02, 1e-3};
  const WaveField psi0 = sample_initial_state(g, 1.0);

  CHECK_THROWS_AS(tdse_evolve(psi0, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(
      tdse_evolve(psi0, {{0.0, 0.4, {}}, {0.5, 1.0, {}}}, 1.0),
      std::invalid_argument);  // gap in coverage
  CHECK_THROWS_AS(tdse_evolve(psi0, {{0.0, 0.5, {}}}, 1.0),
                  std::invalid_argument);  // schedule ends too early
  CHECK_THROWS_AS(tdse_evolve(psi0, {{0.5, 0.5, {}}}, 0.5),
                  std::invalid_argument);  // empty step
  CHECK_THROWS_AS(
      tdse_evolve(psi0, {{0.0, 1.0, {Well{0.0033, 1.0}}}}, 1.0),
      std::invalid_argument);  // well off the lattice

  EvolveOptions opt;
  opt.snapshot_times = {2.0};
  CHECK_THROWS_AS(tdse_evolve(psi0, {{0.0, 1.0, {}}}, 1.0, opt),
                  std::invalid_argument);  // snapshot outside the window
}

TEST_CASE("boundary contamination is detected") {
  // A deep well switched on under a shifted state ejects mass that reaches
  // the walls of this deliberately tiny box.
  Grid g{-5.0, 5.0, 0.05, 1e-3};
  const WaveField psi0 = sample_initial_state(g, 0.5);
  const EvolveResult r =
      tdse_evolve(psi0, {{0.0, 2.0, {Well{0.0, 3.0}}}}, 2.0);
  CHECK(r.boundary_mass > 1e-6);
  CHECK(r.boundary_warning);
  CHECK(r.edge_density > 1e-8);
}
