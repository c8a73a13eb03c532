#include "qtrap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace qtrap {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (the classic QUADPACK
// DQK15 values).  xgk[1], xgk[3], xgk[5] and the centre are the embedded
// 7-point Gauss rule.
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  complex value{};
  double error = 0.0;
  int index = 0;  // creation order, for deterministic tie-breaking
};

// Max-heap on error; FIFO on ties so the refinement order is reproducible.
struct PanelOrder {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.error != q.error) return p.error < q.error;
    return p.index > q.index;
  }
};

void gk15(const Integrand& f, double a, double b, complex& value,
          double& error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const complex fc = f(c);
  complex kronrod = wgk[7] * fc;
  complex gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const complex f1 = f(c - h * xgk[j]);
    const complex f2 = f(c + h * xgk[j]);
    kronrod += wgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += wg[(j - 1) / 2] * (f1 + f2);
  }
  value = h * kronrod;
  error = h * std::abs(kronrod - gauss);
}

} // namespace

QuadResult adaptive_quad(const Integrand& f, double a, double b, double tol,
                         int max_intervals) {
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_quad: tol must be > 0");
  if (!(a < b)) {
    if (a == b) return {complex(0.0, 0.0), 0.0, 0};
    throw std::invalid_argument("adaptive_quad: need a <= b");
  }

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  std::vector<Panel> done;  // panels below the per-panel noise floor
  int next_index = 0;

  Panel whole{a, b, complex(), 0.0, next_index++};
  gk15(f, a, b, whole.value, whole.error);
  double total_error = whole.error;
  queue.push(whole);
  int intervals = 1;

  const double min_width = 1e-14 * (b - a);
  while (total_error > tol && !queue.empty()) {
    if (intervals >= max_intervals) {
      // Assemble the best estimate before giving up.
      complex partial{};
      std::vector<Panel> all(done);
      while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
      }
      std::sort(all.begin(), all.end(),
                [](const Panel& p, const Panel& q) { return p.a < q.a; });
      for (const Panel& p : all) partial += p.value;
      throw quadrature_error(
          "adaptive_quad: interval budget exhausted before reaching tolerance",
          partial, total_error);
    }
    Panel worst = queue.top();
    queue.pop();
    if (worst.b - worst.a < min_width) {
      // Cannot refine further; park the panel and accept its error.
      done.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left{worst.a, mid, complex(), 0.0, next_index++};
    Panel right{mid, worst.b, complex(), 0.0, next_index++};
    gk15(f, left.a, left.b, left.value, left.error);
    gk15(f, right.a, right.b, right.value, right.error);
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++intervals;
  }

  // Sum panels in spatial order so the result is independent of the heap's
  // internal arrangement.
  std::vector<Panel> all(done);
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
  complex value{};
  for (const Panel& p : all) value += p.value;
  return {value, total_error, intervals};
}

QuadResult adaptive_quad_split(const Integrand& f, double a, double b,
                               const std::vector<double>& breaks, double tol,
                               int max_intervals) {
  std::vector<double> edges{a, b};
  for (double p : breaks)
    if (p > a && p < b) edges.push_back(p);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const int nseg = static_cast<int>(edges.size()) - 1;
  QuadResult total;
  for (int s = 0; s < nseg; ++s) {
    QuadResult r = adaptive_quad(f, edges[s], edges[s + 1], tol / nseg,
                                 max_intervals / nseg);
    total.value += r.value;
    total.error += r.error;
    total.intervals += r.intervals;
  }
  return total;
}

} // namespace qtrap
