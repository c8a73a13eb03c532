#include "qtrap/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace qtrap {

namespace {

constexpr double two_over_sqrt_pi = 1.1283791670955125739;

// Maclaurin expansion of w(z) = e^{-z^2} erfc(-iz).  w is entire, and the
// series converges quickly for |z| <= 1.5 in any quadrant:
//   w(z) = sum_k (iz)^k * c_k,  split into the even part (e^{-z^2} pieces)
// and the odd part carrying 2/sqrt(pi).
complex faddeeva_series(complex z) {
  const complex iz = complex(0.0, 1.0) * z;
  const complex iz2 = iz * iz;
  complex even_term(1.0, 0.0);
  complex odd_term = iz * two_over_sqrt_pi;
  complex sum = even_term + odd_term;
  for (int k = 1; k < 200; ++k) {
    even_term *= iz2 / static_cast<double>(k);
    odd_term *= iz2 * (2.0 / (2.0 * k + 1.0));
    const complex d = even_term + odd_term;
    sum += d;
    if (std::abs(d) < 1e-16 * std::abs(sum)) break;
  }
  return sum;
}

// Rational/continued-fraction evaluation of w(z) following the classic
// CERNLIB WWERF routine (algorithm 680 lineage).  Works in the first
// quadrant; other quadrants are reached through the reflection
// w(-z) = 2 e^{-z^2} - w(z) and w(conj(z)) = conj(w(-z)).
//
// Two departures from the historic constants.  The asymptotic continued
// fraction runs 28 levels instead of 9, which buys full double precision
// for |z| >= 3 at negligible cost.  And the Taylor/Goertzel stage hands
// over to that fraction once its shape parameter q drops below 0.25: near
// the original region boundary (q -> 0) the stage degenerates and was the
// dominant error source (~4e-10 at its worst corner), while everywhere the
// handoff fires the modulus already exceeds 3 and the fraction is exact to
// machine precision.  The remaining Taylor region (q >= 0.25) runs with
// term counts 7+30q / 10+28q, tuned so its error stays below ~5e-15.
complex faddeeva_wwerf(complex in) {
  constexpr double xlim = 5.33;
  constexpr double ylim = 4.29;

  const double x = std::fabs(in.real());
  const double y = std::fabs(in.imag());
  const double q = (y < ylim && x < xlim)
                       ? (1.0 - y / ylim) *
                             std::sqrt(1.0 - (x / xlim) * (x / xlim))
                       : 0.0;

  double wx, wy;
  if (q >= 0.25) {
    const double h = 1.0 / (3.2 * q);
    const int nc = 7 + static_cast<int>(30.0 * q);
    const int nu = 10 + static_cast<int>(28.0 * q);
    double xl = 1.0;
    for (int i = 1; i < nc; ++i) xl /= h;  // h^{1-nc}
    const double xh = y + 0.5 / h;
    const double yh = x;
    double rx[40] = {0.0};
    double ry[40] = {0.0};
    for (int n = nu; n >= 1; --n) {
      const double tx = xh + n * rx[n];
      const double ty = yh - n * ry[n];
      const double tn = tx * tx + ty * ty;
      rx[n - 1] = 0.5 * tx / tn;
      ry[n - 1] = 0.5 * ty / tn;
    }
    double sx = 0.0;
    double sy = 0.0;
    double xll = xl;
    for (int n = nc; n >= 1; --n) {
      const double saux = sx + xll;
      sx = rx[n - 1] * saux - ry[n - 1] * sy;
      sy = rx[n - 1] * sy + ry[n - 1] * saux;
      xll = h * xll;
    }
    wx = two_over_sqrt_pi * sx;
    wy = two_over_sqrt_pi * sy;
  } else {
    const double xh = y;
    const double yh = x;
    double rx = 0.0;
    double ry = 0.0;
    for (int n = 28; n >= 1; --n) {
      const double tx = xh + n * rx;
      const double ty = yh - n * ry;
      const double tn = tx * tx + ty * ty;
      rx = 0.5 * tx / tn;
      ry = 0.5 * ty / tn;
    }
    wx = two_over_sqrt_pi * rx;
    wy = two_over_sqrt_pi * ry;
  }
  if (y == 0.0) wx = std::exp(-x * x);

  // Unfold the quadrant reflections back to the original argument.
  if (in.imag() < 0.0) {
    const double e = std::exp(y * y - x * x);
    wx = 2.0 * e * std::cos(2.0 * x * y) - wx;
    wy = -2.0 * e * std::sin(2.0 * x * y) - wy;
    if (in.real() > 0.0) wy = -wy;
  } else if (in.real() < 0.0) {
    wy = -wy;
  }
  return complex(wx, wy);
}

} // namespace

complex faddeeva_w(complex z) {
  if (std::abs(z) <= 1.5) return faddeeva_series(z);
  return faddeeva_wwerf(z);
}

complex erfcx_complex(complex z) {
  // erfcx(z) = e^{z^2} erfc(z) = w(iz)
  return faddeeva_w(complex(-z.imag(), z.real()));
}

complex erfc_complex(complex z) {
  if (z.real() >= 0.0) {
    // erfc(z) = e^{-z^2} w(iz); safe because Re z >= 0 keeps the
    // exponential from overflowing against the bounded w.
    return std::exp(-z * z) * faddeeva_w(complex(-z.imag(), z.real()));
  }
  return 2.0 - erfc_complex(-z);
}

complex moshinsky(double x, complex k, double t) {
  if (!(t > 0.0))
    throw std::domain_error("moshinsky: requires t > 0");
  if (!std::isfinite(x) || !std::isfinite(k.real()) || !std::isfinite(k.imag()))
    throw std::domain_error("moshinsky: non-finite argument");
  // M(x, k, t) = (1/2) e^{i x^2 / (2t)} erfcx(i z),
  // z = (1+i)/2 sqrt(t) (k - x/t).  Writing it through erfcx keeps every
  // factor bounded: the remaining phase is unimodular for real x, t.
  const complex z = 0.5 * complex(1.0, 1.0) * std::sqrt(t) * (k - x / t);
  const complex phase = std::exp(complex(0.0, x * x / (2.0 * t)));
  return 0.5 * phase * erfcx_complex(complex(0.0, 1.0) * z);
}

} // namespace qtrap
