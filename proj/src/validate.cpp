#include "qtrap/validate.hpp"

#include "qtrap/double_well.hpp"
#include "qtrap/kick.hpp"
#include "qtrap/quadrature.hpp"
#include "qtrap/single_well.hpp"
#include "qtrap/specfun.hpp"
#include "qtrap/tdse.hpp"
#include "qtrap/types.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>

namespace qtrap {

namespace {

constexpr complex I(0.0, 1.0);

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream o;
  o << std::setprecision(prec) << v;
  return o.str();
}

template <typename F>
CheckResult run_check(int id, const std::string& name, F&& body) {
  CheckResult r;
  r.id = id;
  r.name = name;
  Timer t;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = t.elapsed();
  return r;
}

// The one expensive numerical artifact, shared between the retention check
// and the density-profile check: Crank-Nicolson evolution of the initial
// bound state through the (mu = 3, l = 1) well hop up to t = 15.
struct SharedRun {
  explicit SharedRun(const ValidationOptions& opt) : opt(opt) {}

  void ensure() {
    if (ready) return;
    grid = Grid{-opt.domain_half, opt.domain_half, opt.dx, opt.dt};
    WaveField psi0 = sample_initial_state(grid, 1.0);
    ScheduleStep step{0.0, 15.0, {Well{0.0, 3.0}}};
    EvolveOptions eo;
    eo.snapshot_times = {0.07, 1.0, 5.0, 15.0};
    evo = tdse_evolve(psi0, {step}, 15.0, eo);
    ready = true;
  }

  ValidationOptions opt;
  bool ready = false;
  Grid grid;
  EvolveResult evo;
};

// Propagator-integral oracle for the Moshinsky function: direct quadrature
// of the free kernel against the cut-off plane wave.  Valid for decaying
// tails, Im k < 0.
complex moshinsky_by_quadrature(double x, complex k, double T) {
  const complex pref = 1.0 / std::sqrt(2.0 * pi * (I * T));
  const double ki = -k.imag();  // decay rate toward x' -> -infinity
  const double L =
      std::log(std::abs(pref) / (1e-10 * ki)) / ki + 10.0;
  auto f = [&](double xp) {
    const double d = x - xp;
    return pref * std::exp(I * (d * d / (2.0 * T))) * std::exp(I * (k * xp));
  };
  std::vector<double> breaks;
  if (x > -L && x < 0.0) breaks.push_back(x);  // stationary-phase point
  return adaptive_quad_split(f, -L, 0.0, breaks, 1e-9, 60000).value;
}

} // namespace

std::vector<CheckResult> run_acceptance_checks(const ValidationOptions& opt) {
  std::vector<CheckResult> out;
  SharedRun shared(opt);

  // ---------------------------------------------------------------- 1
  out.push_back(run_check(1, "retention at (mu=3, l=1)", [&](CheckResult& r) {
    const double p_closed = retention_probability(3.0, 1.0);

    auto integrand = [](double x) {
      return std::conj(final_state(x, 3.0, 50.0)) *
             evolve_after_switch(x, 50.0, 3.0, 1.0);
    };
    const double p50 = std::norm(
        adaptive_quad_split(integrand, -45.0, 45.0, {-1.0, 0.0}, 1e-8, 40000)
            .value);

    shared.ensure();
    const WaveField fin = sample_final_state(shared.grid, 3.0);
    const double p15 = std::norm(overlap(fin, shared.evo.psi));

    r.passed = std::fabs(p_closed - 0.21) <= 0.01 &&
               std::fabs(p50 - 0.21) <= 0.01 && std::fabs(p15 - 0.21) <= 0.01;
    r.detail = "closed form " + fmt(p_closed, 6) + ", analytic overlap t=50 " +
               fmt(p50, 6) + ", oracle overlap t=15 " + fmt(p15, 6) +
               " (target 0.21 +- 0.01)";
  }));

  // ---------------------------------------------------------------- 2
  out.push_back(run_check(2, "optimal strength asymptotics", [&](CheckResult& r) {
    double prev_mu_dev = 1e9;
    double prev_p_dev = 1e9;
    bool ok = true;
    std::string measured;
    for (double l : {8.0, 10.0, 15.0}) {
      const OptimalStrength o = optimal_strength(l);
      const double mu_ref = 1.0 / (2.0 * l);
      const double p_ref = 2.0 / (std::exp(1.0) * l);
      const double mu_dev = std::fabs(o.mu_max - mu_ref) / mu_ref;
      const double p_dev = std::fabs(o.p_max - p_ref) / p_ref;
      ok = ok && mu_dev <= 0.15 && p_dev <= 0.15 && mu_dev < prev_mu_dev &&
           p_dev < prev_p_dev;
      prev_mu_dev = mu_dev;
      prev_p_dev = p_dev;
      measured += " l=" + fmt(l, 3) + ": dev(mu)=" + fmt(mu_dev, 3) +
                  ", dev(P)=" + fmt(p_dev, 3) + ";";
    }
    r.passed = ok;
    r.detail = "relative deviations from 1/(2l), (2/e)/l (limit 0.15, "
               "decreasing):" + measured;
  }));

  // ---------------------------------------------------------------- 3
  out.push_back(run_check(3, "mu=1 singular limit", [&](CheckResult& r) {
    double worst_window = 0.0;
    for (double l : {0.5, 1.0, 2.0, 5.0}) {
      const double g1 = (1.0 + l) * std::exp(-l);
      const double lim = g1 * g1;
      for (double mu : {1.0 - 1e-6, 1.0 + 1e-6})
        worst_window =
            std::max(worst_window, std::fabs(retention_probability(mu, l) - lim));
    }

    // Continuity of both branch switches: the retention window edges and
    // the wavefunction's mu = 1 interpolation window, plus the mu -> 0
    // free-evolution limit.  The straddle is kept tiny because the measured
    // difference also carries the function's true slope times the straddle
    // width (the wavefunction's mu-derivative reaches ~2t); at 1e-12 that
    // contribution sits near 1e-11 while a genuine branch mismatch would
    // still appear at full size.
    double worst_cont = 0.0;
    const double d = 1e-12;
    for (double edge : {1.0 - 1e-4, 1.0 + 1e-4})
      for (double l : {0.5, 1.0, 2.0, 5.0})
        worst_cont = std::max(
            worst_cont, std::fabs(retention_probability(edge + d, l) -
                                  retention_probability(edge - d, l)));
    const double probes[][2] = {{0.7, 0.9}, {-1.3, 2.5}, {0.0, 5.0}};
    for (const auto& p : probes) {
      for (double edge : {1.0 - 1e-4, 1.0 + 1e-4})
        worst_cont = std::max(
            worst_cont,
            std::abs(evolve_after_switch(p[0], p[1], edge + d, 1.0) -
                     evolve_after_switch(p[0], p[1], edge - d, 1.0)));
      worst_cont = std::max(
          worst_cont, std::abs(evolve_after_switch(p[0], p[1], d, 1.0) -
                               evolve_after_switch(p[0], p[1], 0.0, 1.0)));
    }
    r.passed = worst_window < 1e-8 && worst_cont < 1e-8;
    r.detail = "max |P(1 +- 1e-6) - limit| = " + fmt(worst_window, 3) +
               ", max branch-threshold jump = " + fmt(worst_cont, 3) +
               " (limits 1e-8)";
  }));

  // ---------------------------------------------------------------- 4
  out.push_back(run_check(4, "exact vs oracle wavefunction", [&](CheckResult& r) {
    shared.ensure();
    bool ok = shared.evo.norm_drift < 1e-6;
    std::string measured;
    for (const WaveField& snap : shared.evo.snapshots) {
      const Grid& g = snap.grid;
      const int n = g.nodes();
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        const double da =
            std::norm(evolve_after_switch(g.x(i), snap.time, 3.0, 1.0));
        const double dn = std::norm(snap.values[i]);
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * (da - dn) * (da - dn);
      }
      const double l2 = std::sqrt(acc * g.dx);
      ok = ok && l2 <= 1e-2;
      measured += " t=" + fmt(snap.time, 3) + ": " + fmt(l2, 3) + ";";
    }
    r.passed = ok;
    r.detail = "L2 density discrepancy (limit 1e-2):" + measured +
               " norm drift " + fmt(shared.evo.norm_drift, 3) + " (limit 1e-6)";
  }));

  // ---------------------------------------------------------------- 5
  out.push_back(run_check(5, "delayed retrapping", [&](CheckResult& r) {
    // tau -> 0 limit equals the instantaneous-hop probability.
    double worst_limit = 0.0;
    for (double l : {0.5, 1.0, 2.0, 4.0}) {
      const double a0 = (1.0 + l) * std::exp(-l);
      worst_limit = std::max(
          worst_limit, std::fabs(std::norm(delayed_amplitude(1e-8, l)) - a0 * a0));
    }

    // Enhancement over the immediate re-switch at large shifts.
    bool enhanced = true;
    std::string enh;
    for (double l : {2.0, 3.0, 4.0, 5.0}) {
      const DelayOptimum d = delay_optimum(l);
      const double p0 = std::norm(delayed_amplitude(0.0, l));
      enhanced = enhanced && d.p_star > p0;
      enh += " l=" + fmt(l, 2) + ": " + fmt(d.p_star / p0, 4) + "x;";
    }

    // Closed form vs direct overlap quadrature at random (tau, l).
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> tau_dist(0.05, 5.0);
    std::uniform_real_distribution<double> l_dist(0.3, 5.0);
    double worst_quad = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double tau = tau_dist(rng);
      const double l = l_dist(rng);
      auto f = [&](double x) {
        return std::exp(-std::fabs(x)) * evolve_after_switch(x, tau, 0.0, l);
      };
      const complex aq =
          adaptive_quad_split(f, -40.0, 40.0, {-l, 0.0}, 1e-8, 40000).value;
      worst_quad =
          std::max(worst_quad, std::abs(delayed_amplitude(tau, l) - aq));
    }

    r.passed = worst_limit <= 1e-6 && enhanced && worst_quad <= 1e-6;
    r.detail = "max ||A(1e-8)|^2 - P(1)| = " + fmt(worst_limit, 3) +
               "; enhancement" + enh + " max |closed - quad| = " +
               fmt(worst_quad, 3) + " (limits 1e-6)";
  }));

  // ---------------------------------------------------------------- 6
  out.push_back(run_check(6, "double-well spectrum", [&](CheckResult& r) {
    // Existence threshold.
    bool ok = true;
    for (double l : {0.3, 0.9, 1.0}) {
      try {
        solve_alpha(l, Parity::odd);
        ok = false;  // should have thrown
      } catch (const no_bound_state_error&) {
      }
    }
    for (double l : {1.01, 1.5, 3.0}) solve_alpha(l, Parity::odd);

    // Residuals of the matching conditions at the returned roots.
    double worst_res = 0.0;
    for (double l : {0.3, 1.0, 2.0, 5.0, 10.0}) {
      const double a = solve_alpha(l, Parity::even);
      worst_res = std::max(
          worst_res, std::fabs(a * (1.0 + std::tanh(0.5 * a * l)) - 2.0));
    }
    for (double l : {1.2, 2.0, 5.0, 10.0}) {
      const double a = solve_alpha(l, Parity::odd);
      worst_res = std::max(
          worst_res,
          std::fabs(a / std::tanh(0.5 * a * l) - (2.0 - a)));
    }
    ok = ok && worst_res < 1e-12;

    // Both decay rates approach 1 at large separation.
    const double ae10 = solve_alpha(10.0, Parity::even);
    const double ao10 = solve_alpha(10.0, Parity::odd);
    ok = ok && std::fabs(ae10 - 1.0) < 1e-3 && std::fabs(ao10 - 1.0) < 1e-3;

    // Independent finite-difference eigensolver at l = 2.
    const Grid fg{-30.0, 30.0, 0.002, 1e-3};
    const auto pairs =
        fd_eigenstates({Well{0.0, 1.0}, Well{-2.0, 1.0}}, fg, 2);
    const DwpSpectrum sp = spectrum(2.0);
    double fd_err = 1e9;
    if (pairs.size() == 2 && sp.e_excited) {
      fd_err = std::max(std::fabs(pairs[0].energy - sp.e_ground),
                        std::fabs(pairs[1].energy - *sp.e_excited));
    }
    ok = ok && fd_err <= 1e-4;

    r.passed = ok;
    r.detail = "max residual " + fmt(worst_res, 3) + " (limit 1e-12); "
               "alpha(10) offsets " + fmt(std::fabs(ae10 - 1.0), 3) + "/" +
               fmt(std::fabs(ao10 - 1.0), 3) + " (limit 1e-3); "
               "eigensolver energy error " + fmt(fd_err, 3) + " (limit 1e-4)";
  }));

  // ---------------------------------------------------------------- 7
  out.push_back(run_check(7, "double-well retrapping", [&](CheckResult& r) {
    double worst_quad = 0.0;
    bool sum_ok = true;
    double gap7 = 1e9;
    for (double l : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 7.0, 10.0}) {
      const RetrapProbabilities rp = retrap_probabilities(l);
      double total = rp.p_even;
      for (int parity = 0; parity < 2; ++parity) {
        if (parity == 1 && !rp.p_odd) continue;
        const DwpState st =
            bound_state(l, parity == 0 ? Parity::even : Parity::odd);
        auto f = [&](double x) {
          return complex(std::exp(-std::fabs(x + l)) * dwp_wavefunction(st, x),
                         0.0);
        };
        const double o =
            adaptive_quad_split(f, -(40.0 + l), 40.0, {-l, 0.0}, 1e-12, 40000)
                .value.real();
        const double p_closed = parity == 0 ? rp.p_even : *rp.p_odd;
        worst_quad = std::max(worst_quad, std::fabs(p_closed - o * o));
        if (parity == 1) total += *rp.p_odd;
      }
      sum_ok = sum_ok && total <= 1.0 + 1e-12;
      if (l == 7.0 && rp.p_odd) gap7 = std::fabs(rp.p_even - *rp.p_odd);
    }
    r.passed = worst_quad <= 1e-10 && sum_ok && gap7 < 0.02;
    r.detail = "max |closed - quadrature| = " + fmt(worst_quad, 3) +
               " (limit 1e-10); |p_even - p_odd| at l=7: " + fmt(gap7, 4) +
               " (limit 0.02); sums <= 1: " + (sum_ok ? "yes" : "no");
  }));

  // ---------------------------------------------------------------- 8
  out.push_back(run_check(8, "kick retention", [&](CheckResult& r) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double k = -12.0 + 24.0 * i / 49.0;
      auto f = [&](double x) {
        return std::exp(I * (k * x)) * std::exp(-2.0 * std::fabs(x));
      };
      const complex aq =
          adaptive_quad_split(f, -20.0, 20.0, {0.0}, 1e-13, 40000).value;
      worst = std::max(worst, std::fabs(std::norm(aq) - kick_retention(k)));
    }
    const bool unit = kick_retention(0.0) == 1.0;
    r.passed = worst <= 1e-10 && unit;
    r.detail = "max |closed - quadrature| = " + fmt(worst, 3) +
               " (limit 1e-10); P(0) = 1: " + (unit ? "yes" : "no");
  }));

  // ---------------------------------------------------------------- 9
  out.push_back(run_check(9, "kick transition structure", [&](CheckResult& r) {
    double worst0 = 0.0;
    for (double l : {1.5, 2.0, 3.0, 5.0, 7.0})
      worst0 = std::max(worst0, kick_transition(0.0, l));

    // Zeros and first maximum at l = 3 against the half-wavelength
    // estimates 2 pi n / l and pi / l.
    const double l = 3.0;
    auto im_part = [l](double k) {
      return (std::exp(I * (0.5 * k * l)) * kick_transition_amplitude(k, l))
          .imag();
    };
    auto bisect_zero = [&](double a, double b) {
      double fa = im_part(a);
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = im_part(m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    };
    const double z1 = bisect_zero(1.6, 2.6);
    const double z2 = bisect_zero(3.8, 4.6);
    const double z1_dev = std::fabs(z1 - 2.0 * pi / l) / (2.0 * pi / l);
    const double z2_dev = std::fabs(z2 - 4.0 * pi / l) / (4.0 * pi / l);

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.05, b = z1;
    double c = b - gr * (b - a), dd = a + gr * (b - a);
    double fc = kick_transition(c, l), fdd = kick_transition(dd, l);
    while (b - a > 1e-10) {
      if (fc > fdd) {
        b = dd;
        dd = c;
        fdd = fc;
        c = b - gr * (b - a);
        fc = kick_transition(c, l);
      } else {
        a = c;
        c = dd;
        fc = fdd;
        dd = a + gr * (b - a);
        fdd = kick_transition(dd, l);
      }
    }
    const double kmax = 0.5 * (a + b);
    const double kmax_dev = std::fabs(kmax - pi / l) / (pi / l);

    // Optimizer against a brute-force grid scan.
    const TransitionOptimum topt = transition_optimum(l);
    double scan_best_k = 0.0, scan_best_p = 0.0;
    for (double k = 1e-3; k <= 4.0 * pi / l + 1e-12; k += 1e-3) {
      const double p = kick_transition(k, l);
      if (p > scan_best_p) {
        scan_best_p = p;
        scan_best_k = k;
      }
    }
    const bool opt_ok = std::fabs(std::sqrt(topt.k2_max) - scan_best_k) <= 2e-3 &&
                        topt.p_max + 1e-12 >= scan_best_p;

    r.passed = worst0 <= 1e-12 && z1_dev <= 0.10 && z2_dev <= 0.10 &&
               kmax_dev <= 0.10 && opt_ok;
    r.detail = "max P(0) = " + fmt(worst0, 3) + " (limit 1e-12); zero "
               "deviations " + fmt(z1_dev, 3) + ", " + fmt(z2_dev, 3) +
               " (limit 0.10); first-max deviation " + fmt(kmax_dev, 4) +
               " at k=" + fmt(kmax, 6) + " vs pi/l=" + fmt(pi / l, 6) +
               " (limit 0.10); optimizer matches scan: " +
               (opt_ok ? "yes" : "no");
  }));

  // ---------------------------------------------------------------- 10
  out.push_back(run_check(10, "special functions", [&](CheckResult& r) {
    // Reflection erfc(z) + erfc(-z) = 2 across all quadrants.  The residual
    // is scaled by the largest magnitude appearing in the identity: where
    // erfc is exponentially large that is the only scale double precision
    // can speak to, and where both values are O(1) it reduces to the plain
    // absolute error.
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst_ref = 0.0;
    int count = 0;
    while (count < 1000) {
      const complex z(u(rng), u(rng));
      if (std::abs(z) > 10.0) continue;
      ++count;
      const complex a = erfc_complex(z);
      const complex b = erfc_complex(-z);
      const double scale = std::max({2.0, std::abs(a), std::abs(b)});
      worst_ref = std::max(worst_ref, std::abs(a + b - 2.0) / scale);
    }

    // Real-axis agreement with the C library's erfc.
    double worst_axis = 0.0;
    for (int i = 0; i <= 1200; ++i) {
      const double x = -6.0 + 0.01 * i;
      const double ours = erfc_complex(complex(x, 0.0)).real();
      const double ref = std::erfc(x);
      worst_axis = std::max(worst_axis, std::fabs(ours - ref) / std::fabs(ref));
    }

    // Moshinsky vs the propagator integral at random decaying-tail points,
    // plus the two reference points (reflected through the complementarity
    // identity where the tail grows).
    std::mt19937 rng2(424242);
    std::uniform_real_distribution<double> xd(-5.0, 5.0);
    std::uniform_real_distribution<double> krd(-3.0, 3.0);
    std::uniform_real_distribution<double> kid(-3.0, -0.2);
    std::uniform_real_distribution<double> td(0.5, 8.0);
    double worst_mosh = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = xd(rng2);
      const complex k(krd(rng2), kid(rng2));
      const double T = td(rng2);
      worst_mosh = std::max(
          worst_mosh, std::abs(moshinsky(x, k, T) - moshinsky_by_quadrature(x, k, T)));
    }
    {
      // M(1, i, 2) via M(x,k,T) = e^{ikx - ik^2 T/2} - M(-x,-k,T).
      const complex k(0.0, 1.0);
      const complex target = std::exp(I * (k * 1.0) - I * (k * k) * 1.0) -
                             moshinsky_by_quadrature(-1.0, -k, 2.0);
      worst_mosh = std::max(worst_mosh, std::abs(moshinsky(1.0, k, 2.0) - target));
      worst_mosh = std::max(
          worst_mosh, std::abs(moshinsky(3.0, complex(0.0, -1.0), 0.5) -
                               moshinsky_by_quadrature(3.0, complex(0.0, -1.0),
                                                       0.5)));
    }

    r.passed = worst_ref <= 1e-12 && worst_axis <= 1e-12 && worst_mosh <= 1e-8;
    r.detail = "reflection " + fmt(worst_ref, 3) + ", real axis " +
               fmt(worst_axis, 3) + " (limits 1e-12); Moshinsky vs "
               "quadrature " + fmt(worst_mosh, 3) + " (limit 1e-8)";
  }));

  return out;
}

int report_checks(const std::vector<CheckResult>& results) {
  int failures = 0;
  for (const CheckResult& r : results) {
    if (!r.passed) ++failures;
    std::printf("[%s] check %2d: %s — %s (%.1f s)\n",
                r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str(), r.seconds);
  }
  std::printf("%d/%d checks passed\n",
              static_cast<int>(results.size()) - failures,
              static_cast<int>(results.size()));
  std::fflush(stdout);
  return failures;
}

} // namespace qtrap
