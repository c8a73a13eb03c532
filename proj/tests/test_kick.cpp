// Momentum kicks: single-well retention (Lorentzian overlap) and the
// kick-induced even/odd transition in the double well.  Oracle: direct
// Fourier-overlap quadrature of the product wavefunctions, which shares no
// algebra with the closed-form amplitude.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtrap/double_well.hpp"
#include "qtrap/kick.hpp"
#include "qtrap/quadrature.hpp"

#include <algorithm>
#include <cmath>

using namespace qtrap;

namespace {

// integral exp(ikx) phi_even phi_odd dx by quadrature
complex transition_by_quadrature(double k, double l) {
  const DwpState even = bound_state(l, Parity::even);
  const DwpState odd = bound_state(l, Parity::odd);
  const double L = l + 16.0 / std::min({even.alpha, odd.alpha, 1.0});
  const complex i{0.0, 1.0};
  const QuadResult q = adaptive_quad_split(
      [&](double x) {
        return std::exp(i * k * x) * dwp_wavefunction(even, x) *
               dwp_wavefunction(odd, x);
      },
      -L, L, {-l, 0.0}, 1e-11, 60000);
  return q.value;
}

} // namespace

TEST_CASE("kick retention: closed form and symmetry") {
  CHECK(kick_retention_amplitude(0.0) == 1.0);
  CHECK(kick_retention(0.0) == 1.0);
  CHECK(std::fabs(kick_retention_amplitude(2.0) - 0.5) < 1e-15);
  CHECK(std::fabs(kick_retention(1.0) - 0.64) < 1e-15);
  CHECK(kick_retention(1.7) == kick_retention(-1.7));
  CHECK(kick_retention(3.0) < kick_retention(1.0));
}

TEST_CASE("kick retention matches the Fourier-overlap quadrature") {
  const double k = 1.7;
  const complex i{0.0, 1.0};
  const QuadResult q = adaptive_quad_split(
      [&](double x) { return std::exp(-2.0 * std::fabs(x)) *
                             std::exp(i * k * x); },
      -30.0, 30.0, {0.0}, 1e-12, 60000);
  CHECK(std::abs(q.value - complex(kick_retention_amplitude(k), 0.0)) <
        1e-10);
}

TEST_CASE("kick transition: frozen references") {
  const complex a = kick_transition_amplitude(1.5, 2.0);
  const complex ref{0.6770546014845771, 0.048013221648673186};
  CHECK(std::abs(a - ref) < 1e-11);
  CHECK(std::fabs(kick_transition(1.5, 2.0) - 0.46070820284452) < 1e-11);
}

TEST_CASE("kick transition: structural identities") {
  CHECK(kick_transition(0.0, 2.0) == 0.0);  // orthogonal states, no kick
  CHECK(std::abs(kick_transition_amplitude(0.0, 3.0)) < 1e-15);
  CHECK(kick_transition(1.3, 2.0) == kick_transition(-1.3, 2.0));

  // exp(ikl/2) A is purely imaginary: the product wavefunction is odd
  // about the midpoint -l/2
  struct Pt { double k, l; };
  const Pt pts[] = {{0.7, 1.5}, {2.3, 2.0}, {1.1, 4.0}};
  const complex i{0.0, 1.0};
  for (const Pt& p : pts) {
    const complex rotated =
        std::exp(i * p.k * p.l / 2.0) * kick_transition_amplitude(p.k, p.l);
    CHECK(std::fabs(rotated.real()) < 1e-14 * std::abs(rotated) + 1e-16);
  }
}

TEST_CASE("kick transition matches the overlap quadrature oracle") {
  struct Pt { double k, l; };
  const Pt pts[] = {{1.5, 2.0}, {0.9, 3.0}, {2.2, 1.3}};
  for (const Pt& p : pts) {
    const complex oracle = transition_by_quadrature(p.k, p.l);
    const complex closed = kick_transition_amplitude(p.k, p.l);
    // overall sign of the odd state is a convention; compare up to it
    const double d = std::min(std::abs(closed - oracle),
                              std::abs(closed + oracle));
    CHECK(d < 1e-9);
    CHECK(std::fabs(std::norm(oracle) - kick_transition(p.k, p.l)) < 1e-9);
  }
}

TEST_CASE("transition zeros at l = 3") {
  for (double k0 : {2.0893387449, 4.1862665729}) {
    CHECK(kick_transition(k0, 3.0) < 1e-18);
    // genuine sign change of the (imaginary) rotated amplitude
    const complex i{0.0, 1.0};
    auto rot = [&](double k) {
      return (std::exp(i * k * 3.0 / 2.0) *
              kick_transition_amplitude(k, 3.0)).imag();
    };
    CHECK(rot(k0 - 1e-3) * rot(k0 + 1e-3) < 0.0);
  }
}

TEST_CASE("transition optimum: frozen optima") {
  struct Ref { double l, k2, p, de; };
  const Ref refs[] = {{2.0, 1.2848643197, 0.5471303562, 0.5946555020},
                      {3.0, 0.7794344730, 0.6889131765, 0.2047515953}};
  for (const Ref& r : refs) {
    const TransitionOptimum o = transition_optimum(r.l);
    // locating a quadratic maximum from values alone is sqrt(eps)-limited,
    // so the argmax gets a wider band than the flat-at-the-top probability
    CHECK(std::fabs(o.k2_max - r.k2) < 1e-6);
    CHECK(std::fabs(o.p_max - r.p) < 1e-9);
    CHECK(std::fabs(o.delta_e - r.de) < 1e-9);
    // delta_e really is the level spacing
    const DwpSpectrum s = spectrum(r.l);
    CHECK(std::fabs(o.delta_e - (*s.e_excited - s.e_ground)) < 1e-12);
  }
}

TEST_CASE("transition requires the odd state") {
  CHECK_THROWS_AS(kick_transition(1.0, 0.9), no_bound_state_error);
  CHECK_THROWS_AS(kick_transition_amplitude(1.0, 1.0), no_bound_state_error);
  CHECK_THROWS_AS(transition_optimum(0.8), no_bound_state_error);
}
