#pragma once

#include "qtrap/types.hpp"

namespace qtrap {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), evaluated over the whole
// complex plane.
complex faddeeva_w(complex z);

// Scaled complementary error function exp(z^2) erfc(z).  Finite and accurate
// in regimes where erfc itself under- or overflows; equal to w(iz).
complex erfcx_complex(complex z);

// Complementary error function for complex argument.
complex erfc_complex(complex z);

// Moshinsky function
//
//   M(x, k, t) = 1/2 exp(i x^2/(2t) - z^2) erfc(iz),
//   z = (1+i)/2 sqrt(t) (k - x/t),
//
// the exact free evolution of a plane wave sharply cut off at the origin.
// Internally routed through erfcx so the exp(-z^2) prefactor and erfc(iz)
// never overflow separately.  Callers evolving under i psi_t = -psi_xx pass
// 2t as the third argument.  Requires t > 0.
complex moshinsky(double x, complex k, double t);

} // namespace qtrap
