#include "qtrap/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace qtrap {

int Grid::nodes() const {
  return static_cast<int>(std::llround((x_max - x_min) / dx)) + 1;
}

int Grid::node_index(double x0) const {
  const double s = (x0 - x_min) / dx;
  const int i = static_cast<int>(std::llround(s));
  if (i < 0 || i >= nodes() || std::fabs(s - i) > 1e-8)
    throw std::invalid_argument("Grid::node_index: position not on a grid node");
  return i;
}

bool Grid::on_node(double x0) const {
  const double s = (x0 - x_min) / dx;
  const long long i = std::llround(s);
  return i >= 0 && i < nodes() && std::fabs(s - i) <= 1e-8;
}

void Grid::validate() const {
  if (!(dx > 0.0) || !(dt > 0.0) || !(x_min < x_max))
    throw std::invalid_argument("Grid: need dx > 0, dt > 0, x_min < x_max");
  const double span = (x_max - x_min) / dx;
  if (std::fabs(span - std::llround(span)) > 1e-6)
    throw std::invalid_argument("Grid: (x_max - x_min) must be a multiple of dx");
  if (std::llround(span) < 100)
    throw std::invalid_argument("Grid: need at least 100 spatial steps");
}

double WaveField::norm() const {
  // Trapezoidal |psi|^2; the end weights matter only when mass reaches the
  // boundary, which the evolver flags separately.
  double s = 0.0;
  const int n = static_cast<int>(values.size());
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    s += w * std::norm(values[i]);
  }
  return std::sqrt(s * grid.dx);
}

complex overlap(const WaveField& f, const WaveField& g) {
  if (f.values.size() != g.values.size())
    throw std::invalid_argument("overlap: mismatched grids");
  complex s{};
  const int n = static_cast<int>(f.values.size());
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    s += w * std::conj(f.values[i]) * g.values[i];
  }
  return s * f.grid.dx;
}

WaveField sample_profile(const Grid& g,
                         const std::function<complex(double)>& f,
                         bool renormalize) {
  g.validate();
  WaveField psi;
  psi.grid = g;
  psi.time = 0.0;
  const int n = g.nodes();
  psi.values.resize(n);
  for (int i = 0; i < n; ++i) psi.values[i] = f(g.x(i));
  if (renormalize) {
    const double nrm = psi.norm();
    if (!(nrm > 0.0))
      throw std::invalid_argument("sample_profile: zero-norm profile");
    const double s = 1.0 / nrm;
    for (auto& v : psi.values) v *= s;
  }
  return psi;
}

WaveField sample_initial_state(const Grid& g, double l) {
  return sample_profile(
      g, [l](double x) { return complex(std::exp(-std::fabs(x + l)), 0.0); },
      true);
}

WaveField sample_final_state(const Grid& g, double mu) {
  return sample_profile(
      g,
      [mu](double x) {
        return complex(std::sqrt(mu) * std::exp(-mu * std::fabs(x)), 0.0);
      },
      true);
}

} // namespace qtrap
