#include "qtrap/single_well.hpp"

#include "qtrap/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qtrap {

namespace {

constexpr complex I(0.0, 1.0);

// Maximize f over [a, b] by golden-section search.  Stops when the bracket
// is below tol_abs + 1e-8 |midpoint|.
template <typename F>
double golden_max(F&& f, double a, double b, double tol_abs) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol_abs + 1e-8 * std::fabs(0.5 * (a + b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// g(mu) = (mu e^{-l} - e^{-mu l}) / (mu - 1), evaluated through its series
// in eps = mu - 1,
//
//   g = e^{-l} [ 1 + sum_{n>=0} (-1)^n eps^n l^{n+1} / (n+1)! ],
//
// which has no cancellation for |eps l| <= 1/2.
double retention_g_series(double eps, double l) {
  double sum = 1.0 + l;
  double term = l;
  for (int n = 1; n < 200; ++n) {
    term *= -eps * l / (n + 1);
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return std::exp(-l) * sum;
}

double retention_raw(double mu, double l) {
  const double eps = mu - 1.0;
  double p;
  if (std::fabs(eps * l) <= 0.5 && std::fabs(eps) <= 0.5) {
    const double g = retention_g_series(eps, l);
    p = 4.0 * mu * g * g / ((mu + 1.0) * (mu + 1.0));
  } else {
    const double num = mu * std::exp(-l) - std::exp(-mu * l);
    const double den = mu * mu - 1.0;
    p = 4.0 * mu * num * num / (den * den);
  }
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  return p;
}

} // namespace

BoundState1W make_bound_state(double center, double mu) {
  if (!(mu > 0.0))
    throw std::domain_error("make_bound_state: requires mu > 0");
  return {center, mu, -mu * mu, mu};
}

complex initial_state(double x, double l, double t) {
  return std::exp(-std::fabs(x + l)) * std::exp(I * t);
}

complex final_state(double x, double mu, double t) {
  if (!(mu > 0.0))
    throw std::domain_error("final_state: requires mu > 0");
  return std::sqrt(mu) * std::exp(-mu * std::fabs(x)) *
         std::exp(I * (mu * mu * t));
}

double retention_probability(double mu, double l) {
  if (mu < 0.0 || l < 0.0)
    throw std::domain_error("retention_probability: requires mu >= 0, l >= 0");
  const double eps = mu - 1.0;
  // Inside a narrow window around the removable mu = 1 singularity the
  // value is pinned to the limit (1+l)^2 e^{-2l}, approached quadratically
  // so both the window values and the window-edge match are smooth at
  // double precision.
  constexpr double window = 1e-4;
  if (std::fabs(eps) < window) {
    const double g1 = (1.0 + l) * std::exp(-l);
    const double p_limit = g1 * g1;
    const double q = eps / window;
    double p = p_limit + (retention_raw(mu, l) - p_limit) * q * q;
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
  }
  return retention_raw(mu, l);
}

OptimalStrength optimal_strength(double l) {
  if (l < 0.0) throw std::domain_error("optimal_strength: requires l >= 0");
  auto p = [l](double mu) { return retention_probability(mu, l); };
  // Geometric scan; P has a single interior maximum between the mu -> 0 and
  // mu -> infinity falloffs.
  const double lo = 1e-4;
  const double hi = 50.0;
  const int npts = 800;
  const double ratio = std::pow(hi / lo, 1.0 / (npts - 1));
  double best_mu = lo;
  double best_p = p(lo);
  double mu = lo;
  for (int i = 1; i < npts; ++i) {
    mu *= ratio;
    const double v = p(mu);
    if (v > best_p) {
      best_p = v;
      best_mu = mu;
    }
  }
  const double a = best_mu / ratio;
  const double b = best_mu * ratio;
  const double mu_star = golden_max(p, a, b, 1e-12);
  return {mu_star, p(mu_star)};
}

complex evolve_after_switch(double x, double t, double mu, double l) {
  if (!(t > 0.0))
    throw std::domain_error("evolve_after_switch: requires t > 0");
  if (mu < 0.0 || l < 0.0)
    throw std::domain_error("evolve_after_switch: requires mu >= 0, l >= 0");

  const double T = 2.0 * t;

  // Free spreading: only the two cut-off plane-wave pieces of the initial
  // exponential survive.
  if (mu == 0.0)
    return moshinsky(x + l, -I, T) + moshinsky(-x - l, -I, T);

  // General strengths away from mu = 1.
  auto general = [&](double m) {
    const double X = std::fabs(x) + l;
    const double Y = std::fabs(x);
    const double om = 1.0 - m * m;
    const double el = std::exp(-l);
    complex r = moshinsky(x + l, -I, T) + moshinsky(-x - l, -I, T);
    r += (2.0 * m / om) * moshinsky(X, I * m, T);
    r -= (2.0 * m * m * el / om) * moshinsky(Y, I * m, T);
    r -= (m / (1.0 + m)) * moshinsky(X, -I, T);
    r -= (m / (1.0 - m)) * moshinsky(X, I, T);
    r += (m * el / (1.0 - m)) * moshinsky(Y, I, T);
    r -= (m * el / (1.0 + m)) * moshinsky(Y, -I, T);
    return r;
  };

  constexpr double window = 1e-4;
  const double eps = mu - 1.0;
  if (std::fabs(eps) >= window) return general(mu);

  // Symmetric case mu = 1: the 1/(1-mu) coefficients above merge into
  // derivative terms.  Closed form with every exponential kept unimodular
  // (each phase e^{i q^2/(4t)} multiplies an erfcx whose argument squares
  // back to -i q^2/(4t) plus a bounded real part).
  const double u = x + l;
  const double X = std::fabs(x) + l;
  const double Y = std::fabs(x);
  const double el = std::exp(-l);
  const complex s = std::sqrt(I * t);
  const complex su = u / (2.0 * s);
  const complex sX = X / (2.0 * s);
  const complex sY = Y / (2.0 * s);
  const complex phu = std::exp(I * (u * u / (4.0 * t)));
  const complex phX = std::exp(I * (X * X / (4.0 * t)));
  const complex phY = std::exp(I * (Y * Y / (4.0 * t)));
  const complex p0 =
      0.5 * phu * (erfcx_complex(s + su) + erfcx_complex(s - su)) +
      (0.5 + X - 2.0 * I * t) * 0.5 * phX * erfcx_complex(-s + sX) -
      0.25 * phX * erfcx_complex(s + sX) +
      el * (0.5 - Y + 2.0 * I * t) * 0.5 * phY * erfcx_complex(-s + sY) -
      0.25 * el * phY * erfcx_complex(s + sY) +
      std::sqrt(I * t / pi) * (el * phY - phX);
  if (eps == 0.0) return p0;

  // Inside the window, interpolate quadratically between the symmetric
  // closed form and the general form at the window edges; the general form
  // is accurate there and the wavefunction is smooth in mu, so the
  // interpolation error stays far below the coefficient blow-up that the
  // general form would suffer deeper inside.
  const complex pm = general(1.0 - window);
  const complex pp = general(1.0 + window);
  const double sfrac = eps / window;
  return pm * (0.5 * sfrac * (sfrac - 1.0)) + p0 * (1.0 - sfrac * sfrac) +
         pp * (0.5 * sfrac * (sfrac + 1.0));
}

complex free_asymptotic(double x, double t, double l) {
  if (!(t > 0.0))
    throw std::domain_error("free_asymptotic: requires t > 0");
  const double u = x + l;
  return std::pow(t, 1.5) / std::sqrt(I * pi) *
         std::exp(I * (u * u / (4.0 * t))) / (t * t + 0.25 * u * u);
}

complex asymptotic_center_value(double l, double t) {
  return (1.0 + l) * std::exp(-l) * std::exp(I * t);
}

KernelResult propagate_kernel(const WaveField& initial, double mu, double t,
                              double x) {
  if (!(t > 0.0))
    throw std::domain_error("propagate_kernel: requires t > 0");
  if (mu < 0.0)
    throw std::domain_error("propagate_kernel: requires mu >= 0");
  const Grid& g = initial.grid;
  const int n = static_cast<int>(initial.values.size());
  if (n < 4)
    throw std::invalid_argument("propagate_kernel: profile too short");

  const complex sqit = std::sqrt(I * t);
  const complex pref = 1.0 / (2.0 * sqit * std::sqrt(pi));

  // Full kernel of the strength-mu well: free spreading plus the image-like
  // correction, written so the correction's exponential stays bounded
  // (Re of the erfcx argument squared is -mu R <= 0).
  std::vector<complex> f(n);
  for (int i = 0; i < n; ++i) {
    const double xp = g.x(i);
    const double d = x - xp;
    complex kernel = pref * std::exp(I * (d * d / (4.0 * t)));
    if (mu > 0.0) {
      const double R = std::fabs(x) + std::fabs(xp);
      const complex w = (R - 2.0 * I * mu * t) / (2.0 * sqit);
      kernel += 0.5 * mu * std::exp(I * (R * R / (4.0 * t))) *
                erfcx_complex(w);
    }
    f[i] = kernel * initial.values[i];
  }

  // Composite Simpson; a 3/8 block absorbs the final three intervals when
  // the interval count is odd.
  complex s{};
  const int m = n - 1;
  const int simpson_end = (m % 2 == 0) ? m : m - 3;
  for (int i = 0; i + 2 <= simpson_end; i += 2)
    s += (g.dx / 3.0) * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  if (m % 2 != 0) {
    const int i0 = m - 3;
    s += (3.0 * g.dx / 8.0) *
         (f[i0] + 3.0 * f[i0 + 1] + 3.0 * f[i0 + 2] + f[i0 + 3]);
  }
  return {s, g.dx > 0.05};
}

complex delayed_amplitude(double tau, double l) {
  if (tau < 0.0 || l < 0.0)
    throw std::domain_error("delayed_amplitude: requires tau >= 0, l >= 0");
  const double el = std::exp(-l);
  if (tau == 0.0) return complex((1.0 + l) * el, 0.0);
  const double T = 2.0 * tau;
  complex a = -2.0 * I * tau * el * (moshinsky(0.0, -I, T) + moshinsky(0.0, I, T));
  a += (1.0 - 2.0 * I * tau - l) * moshinsky(l, -I, T);
  a -= (1.0 - 2.0 * I * tau + l) * moshinsky(l, I, T);
  a += 2.0 * std::sqrt(I * tau / pi) * std::exp(I * (l * l / (4.0 * tau)));
  a += (1.0 + l) * el * std::exp(I * tau);
  return a;
}

DelayOptimum delay_optimum(double l) {
  if (l < 0.0) throw std::domain_error("delay_optimum: requires l >= 0");
  auto p = [l](double tau) { return std::norm(delayed_amplitude(tau, l)); };
  const double cap = std::max(10.0 * l * l, 1.0);
  const int npts = 4000;
  const double h = cap / npts;
  double best_tau = 0.0;
  double best_p = p(0.0);
  for (int i = 1; i <= npts; ++i) {
    const double tau = i * h;
    const double v = p(tau);
    if (v > best_p) {
      best_p = v;
      best_tau = tau;
    }
  }
  const double a = std::max(0.0, best_tau - h);
  const double b = std::min(cap, best_tau + h);
  const double tau_star = golden_max(p, a, b, 1e-6);
  // Keep the exact endpoint if the refined interior value does not beat it.
  if (p(tau_star) >= best_p) return {tau_star, p(tau_star)};
  return {best_tau, best_p};
}

} // namespace qtrap
