// Adaptive Gauss-Kronrod integrator: node/weight sanity via polynomial
// exactness, smooth and oscillatory references with closed forms,
// kink-splitting, determinism, and the failure contract.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtrap/quadrature.hpp"

#include <cmath>

using namespace qtrap;

TEST_CASE("polynomial exactness up to degree 10 on a single panel") {
  for (int k = 0; k <= 10; ++k) {
    const QuadResult r = adaptive_quad(
        [k](double x) { return complex(std::pow(x, k), 0.0); }, 0.0, 1.0,
        1e-12);
    CHECK(std::fabs(r.value.real() - 1.0 / (k + 1)) < 1e-14);
    CHECK(std::fabs(r.value.imag()) < 1e-15);
  }
}

TEST_CASE("smooth reference integrals") {
  const QuadResult s = adaptive_quad(
      [](double x) { return complex(std::sin(x), 0.0); }, 0.0,
      3.14159265358979323846, 1e-12);
  CHECK(std::fabs(s.value.real() - 2.0) < 1e-12);
  CHECK(s.error < 1e-10);

  const QuadResult e = adaptive_quad(
      [](double x) { return complex(std::exp(x), 0.0); }, 0.0, 1.0, 1e-13);
  CHECK(std::fabs(e.value.real() - (std::exp(1.0) - 1.0)) < 1e-13);

  const QuadResult a = adaptive_quad(
      [](double x) { return complex(1.0 / (1.0 + x * x), 0.0); }, 0.0, 1.0,
      1e-13);
  CHECK(std::fabs(a.value.real() - std::atan(1.0)) < 1e-13);
}

TEST_CASE("oscillatory and complex-valued integrands") {
  const double L = 20.0 * 3.14159265358979323846;
  const QuadResult s = adaptive_quad(
      [](double x) { return complex(std::sin(x), 0.0); }, 0.0, L, 1e-10);
  CHECK(std::fabs(s.value.real()) < 1e-9);

  // integral of exp(ix) over a full period vanishes in both components
  const QuadResult c = adaptive_quad(
      [](double x) { return complex(std::cos(x), std::sin(x)); }, 0.0,
      2.0 * 3.14159265358979323846, 1e-11);
  CHECK(std::abs(c.value) < 1e-10);
}

TEST_CASE("sharp Lorentzian peak is refined to tolerance") {
  const double a = 1e-3;
  const QuadResult r = adaptive_quad(
      [a](double x) { return complex(1.0 / (x * x + a * a), 0.0); }, -1.0, 1.0,
      1e-8);
  const double exact = 2.0 / a * std::atan(1.0 / a);
  CHECK(std::fabs(r.value.real() - exact) < 1e-8 * exact);
  CHECK(r.intervals > 10);  // the peak forces genuine subdivision
}

TEST_CASE("determinism: identical runs produce identical bits") {
  auto f = [](double x) { return complex(std::cos(7.3 * x) / (1.0 + x * x),
                                         std::sin(2.1 * x)); };
  const QuadResult r1 = adaptive_quad(f, -3.0, 5.0, 1e-11);
  const QuadResult r2 = adaptive_quad(f, -3.0, 5.0, 1e-11);
  CHECK(r1.value == r2.value);
  CHECK(r1.error == r2.error);
  CHECK(r1.intervals == r2.intervals);
}

TEST_CASE("argument validation") {
  auto f = [](double) { return complex(1.0, 0.0); };
  CHECK_THROWS_AS(adaptive_quad(f, 1.0, 0.0, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(adaptive_quad(f, 0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(adaptive_quad(f, 0.0, 1.0, -1e-8), std::invalid_argument);

  const QuadResult z = adaptive_quad(f, 2.0, 2.0, 1e-8);
  CHECK(z.value == complex(0.0, 0.0));
  CHECK(z.error == 0.0);
}

TEST_CASE("budget exhaustion raises and carries the partial estimate") {
  // Integrable endpoint singularity; the interval cap is far too small for
  // the requested tolerance.  Exact value of the integral is 2.
  auto f = [](double x) { return complex(1.0 / std::sqrt(x), 0.0); };
  bool thrown = false;
  try {
    adaptive_quad(f, 0.0, 1.0, 1e-13, 8);
  } catch (const quadrature_error& e) {
    thrown = true;
    CHECK(std::fabs(e.partial.real() - 2.0) < 0.5);
    CHECK(e.error > 0.0);
  }
  CHECK(thrown);
}

TEST_CASE("pre-split handles kinks exactly") {
  const QuadResult r = adaptive_quad_split(
      [](double x) { return complex(std::fabs(x), 0.0); }, -1.0, 1.0, {0.0},
      1e-13);
  CHECK(std::fabs(r.value.real() - 1.0) < 1e-13);

  const QuadResult s = adaptive_quad_split(
      [](double x) { return complex(std::exp(-std::fabs(x - 0.3)), 0.0); },
      -2.0, 2.0, {0.3}, 1e-12);
  const double exact = (1.0 - std::exp(-2.3)) + (1.0 - std::exp(-1.7));
  CHECK(std::fabs(s.value.real() - exact) < 1e-12);
}

TEST_CASE("breaks outside the interval are ignored") {
  const QuadResult r = adaptive_quad_split(
      [](double x) { return complex(x * x, 0.0); }, 0.0, 1.0, {-5.0, 7.0},
      1e-12);
  CHECK(std::fabs(r.value.real() - 1.0 / 3.0) < 1e-14);
}
