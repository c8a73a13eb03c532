#include "qtrap/tdse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <lapacke.h>

namespace qtrap {

namespace {

// One Crank-Nicolson block with a fixed potential: (1 + c H) psi^{n+1} =
// (1 - c H) psi^n, c = i dt/2, with H the standard three-point stencil plus
// on-node delta terms.  The LU factors of the constant tridiagonal
// left-hand side are computed once per block.
class CnBlock {
public:
  CnBlock(const Grid& g, const std::vector<Well>& wells, double dt) {
    const int n = g.nodes();
    const double inv_dx2 = 1.0 / (g.dx * g.dx);
    const complex c(0.0, 0.5 * dt);
    b_ = -c * inv_dx2;  // off-diagonal of (1 + cH)
    cc_ = c * inv_dx2;  // off-diagonal weight of (1 - cH)

    std::vector<double> v(n, 0.0);
    for (const Well& w : wells)
      v[g.node_index(w.position)] += -2.0 * w.strength / g.dx;

    rhs_diag_.resize(n);
    m_.resize(n);
    u_inv_.resize(n);
    complex u_prev{};
    for (int j = 0; j < n; ++j) {
      const double h = 2.0 * inv_dx2 + v[j];
      rhs_diag_[j] = 1.0 - c * h;
      const complex d = 1.0 + c * h;
      complex u;
      if (j == 0) {
        m_[0] = complex(0.0, 0.0);
        u = d;
      } else {
        m_[j] = b_ / u_prev;
        u = d - m_[j] * b_;
      }
      u_inv_[j] = 1.0 / u;
      u_prev = u;
    }
  }

  void step(std::vector<complex>& psi, std::vector<complex>& work) const {
    const int n = static_cast<int>(psi.size());
    // Right-hand side (Dirichlet beyond both ends).
    complex prev(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      const complex cur = psi[j];
      const complex next = (j + 1 < n) ? psi[j + 1] : complex(0.0, 0.0);
      work[j] = rhs_diag_[j] * cur + cc_ * (prev + next);
      prev = cur;
    }
    // Thomas solve with the precomputed factors.
    for (int j = 1; j < n; ++j) work[j] -= m_[j] * work[j - 1];
    psi[n - 1] = work[n - 1] * u_inv_[n - 1];
    for (int j = n - 2; j >= 0; --j)
      psi[j] = (work[j] - b_ * psi[j + 1]) * u_inv_[j];
  }

private:
  complex b_{};
  complex cc_{};
  std::vector<complex> rhs_diag_;
  std::vector<complex> m_;
  std::vector<complex> u_inv_;
};

const ScheduleStep& find_step(const std::vector<ScheduleStep>& schedule,
                              double t_mid) {
  for (const ScheduleStep& s : schedule)
    if (s.t_start - 1e-9 <= t_mid && t_mid <= s.t_end + 1e-9) return s;
  throw std::invalid_argument("tdse_evolve: schedule does not cover the "
                              "requested evolution window");
}

} // namespace

EvolveResult tdse_evolve(const WaveField& psi0,
                         const std::vector<ScheduleStep>& schedule,
                         double t_final, const EvolveOptions& options) {
  const Grid& g = psi0.grid;
  g.validate();
  const int n = g.nodes();
  if (static_cast<int>(psi0.values.size()) != n)
    throw std::invalid_argument("tdse_evolve: psi0 size does not match grid");
  const double t0 = psi0.time;
  if (!(t_final > t0 - 1e-12))
    throw std::invalid_argument("tdse_evolve: t_final must be >= psi0.time");
  if (schedule.empty())
    throw std::invalid_argument("tdse_evolve: empty schedule");
  for (const ScheduleStep& s : schedule) {
    if (!(s.t_start < s.t_end))
      throw std::invalid_argument("tdse_evolve: schedule step with "
                                  "t_start >= t_end");
    for (const Well& w : s.wells)
      g.node_index(w.position);  // throws if off the node lattice
  }
  for (double ts : options.snapshot_times)
    if (ts < t0 - 1e-9 || ts > t_final + 1e-9)
      throw std::invalid_argument(
          "tdse_evolve: snapshot time outside the evolution window");

  // Block boundaries: start, end, every schedule switch, every snapshot.
  std::vector<double> bounds{t0, t_final};
  for (const ScheduleStep& s : schedule) {
    if (s.t_start > t0 + 1e-9 && s.t_start < t_final - 1e-9)
      bounds.push_back(s.t_start);
    if (s.t_end > t0 + 1e-9 && s.t_end < t_final - 1e-9)
      bounds.push_back(s.t_end);
  }
  for (double ts : options.snapshot_times) bounds.push_back(ts);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end(),
                           [](double a, double b) { return b - a < 1e-9; }),
               bounds.end());

  std::vector<double> snaps(options.snapshot_times);
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end(),
                          [](double a, double b) { return b - a < 1e-9; }),
              snaps.end());
  std::size_t next_snap = 0;

  EvolveResult result;
  result.psi = psi0;
  const double norm0 = result.psi.norm();

  auto record_if_snapshot = [&](double t) {
    while (next_snap < snaps.size() && snaps[next_snap] <= t + 1e-9) {
      result.psi.time = t;
      result.snapshots.push_back(result.psi);
      ++next_snap;
    }
  };

  record_if_snapshot(t0);
  std::vector<complex> work(n);
  for (std::size_t bidx = 0; bidx + 1 < bounds.size(); ++bidx) {
    const double ta = bounds[bidx];
    const double tb = bounds[bidx + 1];
    const double duration = tb - ta;
    const ScheduleStep& step = find_step(schedule, 0.5 * (ta + tb));
    const int steps =
        std::max(1, static_cast<int>(std::ceil(duration / g.dt - 1e-9)));
    const CnBlock block(g, step.wells, duration / steps);
    for (int s = 0; s < steps; ++s) block.step(result.psi.values, work);
    result.psi.time = tb;
    record_if_snapshot(tb);
  }

  result.norm_drift = std::fabs(result.psi.norm() - norm0);

  // Boundary diagnostics on the final state.
  const double span = g.x_max - g.x_min;
  const int i_lo = static_cast<int>(0.1 * (n - 1));
  double mass = 0.0;
  for (int i = 0; i < i_lo; ++i) {
    mass += 0.5 * g.dx *
            (std::norm(result.psi.values[i]) +
             std::norm(result.psi.values[i + 1]));
    mass += 0.5 * g.dx *
            (std::norm(result.psi.values[n - 1 - i]) +
             std::norm(result.psi.values[n - 2 - i]));
  }
  result.boundary_mass = mass;

  const double margin = std::min(5.0, 0.5 * span);
  double edge = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = g.x(i);
    if (x <= g.x_min + margin || x >= g.x_max - margin)
      edge = std::max(edge, std::norm(result.psi.values[i]));
  }
  result.edge_density = edge;
  result.boundary_warning =
      result.boundary_mass > options.boundary_mass_threshold || edge > 1e-8;
  return result;
}

std::vector<EigenPair> fd_eigenstates(const std::vector<Well>& wells,
                                      const Grid& grid, int n_states) {
  grid.validate();
  if (n_states < 1)
    throw std::invalid_argument("fd_eigenstates: need n_states >= 1");
  const int n = grid.nodes();
  const double inv_dx2 = 1.0 / (grid.dx * grid.dx);

  std::vector<double> diag(n, 2.0 * inv_dx2);
  for (const Well& w : wells)
    diag[grid.node_index(w.position)] += -2.0 * w.strength / grid.dx;
  std::vector<double> off(n, -inv_dx2);  // one slot spare for the wrapper

  const int iu = std::min(n_states, n);
  std::vector<double> w(n, 0.0);
  std::vector<double> z(static_cast<std::size_t>(n) * iu, 0.0);
  std::vector<lapack_int> isuppz(2 * std::max(1, iu), 0);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, iu,
      0.0, &found, w.data(), z.data(), n, isuppz.data());
  if (info != 0)
    throw std::runtime_error("fd_eigenstates: LAPACK dstevr failed");

  std::vector<EigenPair> result;
  for (lapack_int j = 0; j < found; ++j) {
    if (w[j] >= 0.0) break;  // only bound states
    EigenPair p;
    p.energy = w[j];
    p.state.grid = grid;
    p.state.time = 0.0;
    p.state.values.resize(n);
    for (int i = 0; i < n; ++i)
      p.state.values[i] = z[static_cast<std::size_t>(j) * n + i];
    // Exact unit trapezoid norm, deterministic sign: the first node of
    // maximal |value| is made positive.
    const double nrm = p.state.norm();
    double scale = 1.0 / nrm;
    int imax = 0;
    double vmax = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(p.state.values[i]);
      if (a > vmax) {
        vmax = a;
        imax = i;
      }
    }
    if (p.state.values[imax].real() < 0.0) scale = -scale;
    for (auto& v : p.state.values) v *= scale;
    result.push_back(std::move(p));
  }
  return result;
}

} // namespace qtrap
