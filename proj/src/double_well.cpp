#include "qtrap/double_well.hpp"

#include <cmath>

namespace qtrap {

namespace {

// alpha coth(alpha l / 2) with the alpha -> 0 limit handled by series, so
// the odd-parity bisection can probe arbitrarily close to threshold.
double alpha_coth_half(double alpha, double l) {
  const double u = 0.5 * alpha * l;
  if (u < 1e-4) return 2.0 / l + alpha * alpha * l / 6.0;
  const double e = std::exp(-2.0 * u);
  return alpha * (1.0 + e) / (1.0 - e);
}

double even_residual(double alpha, double l) {
  return alpha * (1.0 + std::tanh(0.5 * alpha * l)) - 2.0;
}

double odd_residual(double alpha, double l) {
  return alpha_coth_half(alpha, l) - (2.0 - alpha);
}

template <typename F>
double bisect(double a, double b, double fa, double width, F&& f) {
  while (b - a > width) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

} // namespace

double solve_alpha(double l, Parity parity) {
  if (l < 0.0) throw std::domain_error("solve_alpha: requires l >= 0");
  if (parity == Parity::even) {
    // f(1) = tanh(l/2) - 1 < 0, f(2) = 2 tanh(l) >= 0 brackets the root.
    return bisect(1.0, 2.0, even_residual(1.0, l), 1e-14,
                  [l](double a) { return even_residual(a, l); });
  }
  if (!(l > 1.0))
    throw no_bound_state_error(
        "solve_alpha: odd state requires separation l > 1");
  // f(0+) = 2/l - 2 < 0 for l > 1, f(1) = coth(l/2) - 1 > 0.
  return bisect(0.0, 1.0, 2.0 / l - 2.0, 1e-15,
                [l](double a) { return odd_residual(a, l); });
}

DwpState bound_state(double l, Parity parity) {
  const double alpha = solve_alpha(l, parity);
  const double u = 0.5 * alpha * l;
  double norm_sq;  // integral of the unnormalized piecewise profile squared
  if (parity == Parity::even) {
    const double sech = 2.0 * std::exp(-u) / (1.0 + std::exp(-2.0 * u));
    norm_sq = (1.0 + std::tanh(u)) / alpha + 0.5 * l * sech * sech;
  } else if (u < 1e-3) {
    // coth u - u csch^2 u = 2u/3 - 4u^3/45 + ...; dividing by alpha gives
    // l/3 - (2/45) l u^2 without the 1/u cancellation.
    norm_sq = 1.0 / alpha + l / 3.0 - (2.0 / 45.0) * l * u * u;
  } else {
    const double e = std::exp(-2.0 * u);
    const double coth = (1.0 + e) / (1.0 - e);
    const double csch = 2.0 * std::exp(-u) / (1.0 - e);
    norm_sq = 1.0 / alpha + (coth - u * csch * csch) / alpha;
  }
  return {parity, alpha, 1.0 / std::sqrt(norm_sq), -alpha * alpha, l};
}

double dwp_wavefunction(const DwpState& state, double x) {
  const double a = state.alpha;
  const double l = state.separation;
  const double sign = (state.parity == Parity::even) ? 1.0 : -1.0;
  double f;
  if (x <= -l) {
    f = sign * std::exp(a * (x + l));
  } else if (x >= 0.0) {
    f = std::exp(-a * x);
  } else {
    // Every exponent is <= 0 in this region, so no growth anywhere.
    const double e = std::exp(-a * l);
    f = (std::exp(a * x) + sign * std::exp(-a * (x + l))) / (1.0 + sign * e);
  }
  return state.norm_const * f;
}

DwpSpectrum spectrum(double l) {
  DwpSpectrum s;
  const double ae = solve_alpha(l, Parity::even);
  s.e_ground = -ae * ae;
  if (l > 1.0) {
    const double ao = solve_alpha(l, Parity::odd);
    s.e_excited = -ao * ao;
  }
  return s;
}

namespace {

// Overlap of the normalized initial state e^{-|x+l|} with the unnormalized
// double-well profile, in closed form.  The (alpha - 1) denominator of the
// middle-region piece is removable; a short series takes over when
// |alpha - 1| l is tiny (large separations drive both alphas to 1).
double overlap_unnormalized(double alpha, double l, double sign) {
  const double el = std::exp(-l);
  const double eal = std::exp(-alpha * l);
  const double eps = alpha - 1.0;

  double mid_minus;  // (e^{-l} - e^{-alpha l}) / (alpha - 1)
  if (std::fabs(eps * l) < 1e-5) {
    const double y = eps * l;
    mid_minus = el * l * (1.0 - 0.5 * y + y * y / 6.0);
  } else {
    mid_minus = (el - eal) / eps;
  }
  const double mid_plus = (1.0 - std::exp(-(alpha + 1.0) * l)) / (alpha + 1.0);

  const double outer = (sign + el) / (1.0 + alpha);
  return outer + (mid_minus + sign * mid_plus) / (1.0 + sign * eal);
}

} // namespace

RetrapProbabilities retrap_probabilities(double l) {
  if (l < 0.0)
    throw std::domain_error("retrap_probabilities: requires l >= 0");
  RetrapProbabilities r;
  const DwpState even = bound_state(l, Parity::even);
  const double oe = overlap_unnormalized(even.alpha, l, 1.0);
  const double ae = even.norm_const * oe;
  r.p_even = ae * ae;
  if (l > 1.0) {
    // Near l = 1 the odd alpha vanishes; the two middle-region pieces then
    // cancel against each other and a few digits are lost, but there the
    // probability itself vanishes like alpha, so the absolute error stays
    // negligible.
    const DwpState odd = bound_state(l, Parity::odd);
    const double oo = overlap_unnormalized(odd.alpha, l, -1.0);
    const double ao = odd.norm_const * oo;
    r.p_odd = ao * ao;
  }
  return r;
}

} // namespace qtrap
