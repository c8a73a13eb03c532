#pragma once

#include <complex>

namespace qtrap {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

} // namespace qtrap
