#include "qtrap/kick.hpp"

#include "qtrap/double_well.hpp"

#include <cmath>

namespace qtrap {

namespace {

constexpr complex I(0.0, 1.0);

// Middle-region contribution to the Fourier overlap of the two double-well
// profiles, already divided by the (1 + e^{-alpha_e l})(1 - e^{-alpha_o l})
// normalization denominators.  c is either alpha_e + alpha_o or
// alpha_o - alpha_e; factoring e^{(|c| - alpha_e - alpha_o) l / 2} out of
// the hyperbolic functions keeps every exponential <= 1 for any l.
double middle_piece(double c, double k, double ae, double ao, double l) {
  const double absc = std::fabs(c);
  const double sgn = (c >= 0.0) ? 1.0 : -1.0;
  const double damp = std::exp(0.5 * (absc - ae - ao) * l);
  const double num = c * std::sin(0.5 * k * l) * (1.0 + std::exp(-absc * l)) -
                     sgn * k * std::cos(0.5 * k * l) * (1.0 - std::exp(-absc * l));
  const double den = (1.0 + std::exp(-ae * l)) * (1.0 - std::exp(-ao * l)) *
                     (c * c + k * k);
  return 2.0 * damp * num / den;
}

} // namespace

double kick_retention_amplitude(double k) { return 4.0 / (4.0 + k * k); }

double kick_retention(double k) {
  const double a = kick_retention_amplitude(k);
  return a * a;
}

complex kick_transition_amplitude(double k, double l) {
  // Normalization constants and decay rates of both parities; throws for
  // l <= 1 where the odd state is missing.
  const DwpState even = bound_state(l, Parity::even);
  const DwpState odd = bound_state(l, Parity::odd);
  const double ae = even.alpha;
  const double ao = odd.alpha;
  const double ap = ae + ao;

  // Tails beyond the wells integrate in closed form; the middle region
  // contributes through the two overflow-safe pieces.
  const complex tails = 1.0 / (ap - I * k) -
                        std::exp(-I * (k * l)) / (ap + I * k);
  const double mid = middle_piece(ap, k, ae, ao, l) +
                     middle_piece(ao - ae, k, ae, ao, l);
  const complex a = tails + std::exp(-I * (0.5 * k * l)) * I * mid;
  return even.norm_const * odd.norm_const * a;
}

double kick_transition(double k, double l) {
  // Evaluate at |k| so the k -> -k symmetry holds bitwise.
  return std::norm(kick_transition_amplitude(std::fabs(k), l));
}

TransitionOptimum transition_optimum(double l) {
  const DwpState even = bound_state(l, Parity::even);
  const DwpState odd = bound_state(l, Parity::odd);

  auto p = [l](double k) { return kick_transition(k, l); };
  const double k_hi = 4.0 * pi / l;
  const int npts = 2000;
  const double h = k_hi / npts;
  double best_k = h;
  double best_p = p(h);
  for (int i = 2; i <= npts; ++i) {
    const double k = i * h;
    const double v = p(k);
    if (v > best_p) {
      best_p = v;
      best_k = k;
    }
  }
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::max(0.0, best_k - h);
  double b = std::min(k_hi, best_k + h);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = p(c);
  double fd = p(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = p(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = p(d);
    }
  }
  const double k_star = 0.5 * (a + b);
  return {k_star * k_star, p(k_star),
          even.alpha * even.alpha - odd.alpha * odd.alpha};
}

} // namespace qtrap
