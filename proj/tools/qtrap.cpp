// Command-line front end: parameter sweeps and evolution snapshots as CSV
// or JSON datasets, plus the analytic-vs-oracle validation suite.
//
// Exit codes: 0 success, 1 internal failure, 2 invalid parameters,
// 3 oracle boundary contamination, 4 emitted probability outside [0, 1].

#include "qtrap/double_well.hpp"
#include "qtrap/kick.hpp"
#include "qtrap/single_well.hpp"
#include "qtrap/tdse.hpp"
#include "qtrap/validate.hpp"
#include "qtrap/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;
using namespace qtrap;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// ------------------------------------------------------------------ tables

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

std::string unit(const std::string& name) { return name + " [dimensionless]"; }

void write_csv(const std::string& path, const Table& t) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    std::fprintf(f, "%s%s", c ? "," : "", t.columns[c].c_str());
  std::fputc('\n', f);
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) std::fputc(',', f);
      if (row[c]) std::fprintf(f, "%.11e", *row[c]);
    }
    std::fputc('\n', f);
  }
  std::fclose(f);
}

void write_json_data(const std::string& path, const std::string& scenario,
                     const Table& t) {
  json j;
  j["scenario"] = scenario;
  j["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json jr = json::array();
    for (const auto& cell : row)
      jr.push_back(cell ? json(*cell) : json(nullptr));
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  const std::string s = j.dump(2);
  std::fwrite(s.data(), 1, s.size(), f);
  std::fputc('\n', f);
  std::fclose(f);
}

void write_sidecar(const std::string& path, const std::string& scenario,
                   const json& params, const json& grid, double runtime_s) {
  json j;
  j["scenario"] = scenario;
  j["params"] = params;
  j["grid"] = grid;
  j["version"] = library_version;
  j["runtime_s"] = runtime_s;
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open sidecar file: " + path);
  const std::string s = j.dump(2);
  std::fwrite(s.data(), 1, s.size(), f);
  std::fputc('\n', f);
  std::fclose(f);
}

// ------------------------------------------------------------------ sweeps

// "start:stop:step", endpoints inclusive within half a step.
std::vector<double> parse_range(const std::string& spec, const char* flag) {
  double a = 0.0, b = 0.0, s = 0.0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &a, &b, &s, &tail) != 3)
    throw CLI::ValidationError(std::string(flag) +
                               ": expected start:stop:step, got '" + spec + "'");
  if (!(s > 0.0))
    throw CLI::ValidationError(std::string(flag) + ": step must be > 0");
  if (b < a - 0.5 * s)
    throw CLI::ValidationError(std::string(flag) + ": empty range");
  std::vector<double> values;
  for (int i = 0;; ++i) {
    const double v = a + i * s;
    if (v > b + 0.5 * s) break;
    values.push_back(v);
  }
  return values;
}

// One parameter given either as a single value or as a sweep.
std::vector<double> parameter_values(const std::optional<double>& single,
                                     const std::string& range,
                                     const char* flag) {
  if (single && !range.empty())
    throw CLI::ValidationError(std::string(flag) +
                               ": give either a value or a range, not both");
  if (single) return {*single};
  if (!range.empty()) return parse_range(range, flag);
  throw CLI::ValidationError(std::string(flag) + ": required (value or range)");
}

// Deterministic parallel fill: strided static chunks, results land by index.
template <typename R, typename F>
std::vector<R> parallel_index_map(std::size_t n, F&& f) {
  std::vector<R> out(n);
  const std::size_t nt =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                            n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::future<void>> futures;
  futures.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t)
    futures.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < n; i += nt) out[i] = f(i);
    }));
  for (auto& fu : futures) fu.get();
  return out;
}

// The [0,1] gate for emitted probabilities; tiny negative roundoff is
// clamped, real violations abort with exit 4.
class probability_range_error : public std::runtime_error {
public:
  explicit probability_range_error(const std::string& what)
      : std::runtime_error(what) {}
};

double checked_probability(double p, const std::string& what) {
  if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) {
    std::ostringstream o;
    o << what << " = " << p << " lies outside [0, 1]";
    throw probability_range_error(o.str());
  }
  return std::min(1.0, std::max(0.0, p));
}

std::string data_path(const std::string& out, const std::string& scenario,
                      bool json_format) {
  if (!out.empty()) return out;
  return scenario + (json_format ? ".json" : ".csv");
}

void emit(const std::string& path, const std::string& scenario, bool as_json,
          const Table& t) {
  if (as_json)
    write_json_data(path, scenario, t);
  else
    write_csv(path, t);
}

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

json grid_json(double domain, double dx, double dt) {
  return json{{"domain", domain}, {"dx", dx}, {"dt", dt}};
}

// ------------------------------------------------------------ subcommands

struct CommonOut {
  std::string out;
  std::string format = "csv";
  bool json() const { return format == "json"; }
};

int run_retention(const std::optional<double>& mu, const std::string& mu_range,
                  const std::optional<double>& l, const std::string& l_range,
                  const CommonOut& o) {
  Timer timer;
  const std::vector<double> mus = parameter_values(mu, mu_range, "--mu");
  const std::vector<double> ls = parameter_values(l, l_range, "--l");

  const bool mu_only = mus.size() > 1 && ls.size() == 1;
  const bool l_only = ls.size() > 1 && mus.size() == 1;

  const std::size_t n = mus.size() * ls.size();
  const auto ps = parallel_index_map<double>(n, [&](std::size_t i) {
    return retention_probability(mus[i % mus.size()], ls[i / mus.size()]);
  });

  Table t;
  if (mu_only)
    t.columns = {unit("mu"), unit("P")};
  else if (l_only)
    t.columns = {unit("l"), unit("P")};
  else
    t.columns = {unit("mu"), unit("l"), unit("P")};
  for (std::size_t i = 0; i < n; ++i) {
    const double m = mus[i % mus.size()];
    const double lv = ls[i / mus.size()];
    const double p = checked_probability(ps[i], "retention probability");
    if (mu_only)
      t.rows.push_back({m, p});
    else if (l_only)
      t.rows.push_back({lv, p});
    else
      t.rows.push_back({m, lv, p});
  }

  const std::string path = data_path(o.out, "retention", o.json());
  emit(path, "retention", o.json(), t);
  json params;
  params["mu"] = mu ? json(*mu) : json(mu_range);
  params["l"] = l ? json(*l) : json(l_range);
  write_sidecar(path + ".meta.json", "retention", params, nullptr,
                timer.elapsed());
  return 0;
}

int run_delay(double l, const std::optional<double>& tau,
              const std::string& tau_range, const CommonOut& o) {
  Timer timer;
  if (l < 0.0) throw CLI::ValidationError("--l: must be >= 0");
  const std::vector<double> taus = parameter_values(tau, tau_range, "--tau");
  for (double tv : taus)
    if (tv < 0.0) throw CLI::ValidationError("--tau: must be >= 0");

  const auto ps = parallel_index_map<double>(taus.size(), [&](std::size_t i) {
    return std::norm(delayed_amplitude(taus[i], l));
  });

  Table t;
  t.columns = {unit("tau"), unit("P")};
  for (std::size_t i = 0; i < taus.size(); ++i)
    t.rows.push_back(
        {taus[i], checked_probability(ps[i], "retrapping probability")});

  const std::string path = data_path(o.out, "delay", o.json());
  emit(path, "delay", o.json(), t);
  json params;
  params["l"] = l;
  params["tau"] = tau ? json(*tau) : json(tau_range);
  write_sidecar(path + ".meta.json", "delay", params, nullptr, timer.elapsed());
  return 0;
}

int run_dwp_spectrum(const std::optional<double>& l, const std::string& l_range,
                     const CommonOut& o) {
  Timer timer;
  const std::vector<double> ls = parameter_values(l, l_range, "--l");
  for (double lv : ls)
    if (lv < 0.0) throw CLI::ValidationError("--l: must be >= 0");

  using Row = std::pair<double, std::optional<double>>;
  const auto rows = parallel_index_map<Row>(ls.size(), [&](std::size_t i) {
    const DwpSpectrum s = spectrum(ls[i]);
    Row r{std::fabs(s.e_ground), std::nullopt};
    if (s.e_excited) r.second = std::fabs(*s.e_excited);
    return r;
  });

  Table t;
  t.columns = {unit("l"), unit("abs_E_even"), unit("abs_E_odd")};
  for (std::size_t i = 0; i < ls.size(); ++i)
    t.rows.push_back({ls[i], rows[i].first, rows[i].second});

  const std::string path = data_path(o.out, "dwp-spectrum", o.json());
  emit(path, "dwp-spectrum", o.json(), t);
  json params;
  params["l"] = l ? json(*l) : json(l_range);
  write_sidecar(path + ".meta.json", "dwp-spectrum", params, nullptr,
                timer.elapsed());
  return 0;
}

int run_retrap(const std::optional<double>& l, const std::string& l_range,
               const CommonOut& o) {
  Timer timer;
  const std::vector<double> ls = parameter_values(l, l_range, "--l");
  for (double lv : ls)
    if (lv < 0.0) throw CLI::ValidationError("--l: must be >= 0");

  using Row = std::pair<double, std::optional<double>>;
  const auto rows = parallel_index_map<Row>(ls.size(), [&](std::size_t i) {
    const RetrapProbabilities r = retrap_probabilities(ls[i]);
    return Row{r.p_even, r.p_odd};
  });

  Table t;
  t.columns = {unit("l"), unit("p_even"), unit("p_odd")};
  for (std::size_t i = 0; i < ls.size(); ++i) {
    std::optional<double> podd;
    if (rows[i].second)
      podd = checked_probability(*rows[i].second, "odd retrapping probability");
    t.rows.push_back(
        {ls[i],
         checked_probability(rows[i].first, "even retrapping probability"),
         podd});
  }

  const std::string path = data_path(o.out, "retrap", o.json());
  emit(path, "retrap", o.json(), t);
  json params;
  params["l"] = l ? json(*l) : json(l_range);
  write_sidecar(path + ".meta.json", "retrap", params, nullptr,
                timer.elapsed());
  return 0;
}

int run_kick_retention(const std::optional<double>& k,
                       const std::string& k_range, const CommonOut& o) {
  Timer timer;
  const std::vector<double> ks = parameter_values(k, k_range, "--k");
  const auto ps = parallel_index_map<double>(ks.size(), [&](std::size_t i) {
    return kick_retention(ks[i]);
  });
  Table t;
  t.columns = {unit("k"), unit("P")};
  for (std::size_t i = 0; i < ks.size(); ++i)
    t.rows.push_back(
        {ks[i], checked_probability(ps[i], "kick retention probability")});
  const std::string path = data_path(o.out, "kick-retention", o.json());
  emit(path, "kick-retention", o.json(), t);
  json params;
  params["k"] = k ? json(*k) : json(k_range);
  write_sidecar(path + ".meta.json", "kick-retention", params, nullptr,
                timer.elapsed());
  return 0;
}

int run_kick_transition(double l, const std::optional<double>& k,
                        const std::string& k_range, const CommonOut& o) {
  Timer timer;
  if (!(l > 1.0))
    throw CLI::ValidationError(
        "--l: kick-transition requires l > 1 (no odd state below)");
  const std::vector<double> ks = parameter_values(k, k_range, "--k");
  const auto ps = parallel_index_map<double>(ks.size(), [&](std::size_t i) {
    return kick_transition(ks[i], l);
  });
  Table t;
  t.columns = {unit("k"), unit("P")};
  for (std::size_t i = 0; i < ks.size(); ++i)
    t.rows.push_back(
        {ks[i], checked_probability(ps[i], "kick transition probability")});
  const std::string path = data_path(o.out, "kick-transition", o.json());
  emit(path, "kick-transition", o.json(), t);
  json params;
  params["l"] = l;
  params["k"] = k ? json(*k) : json(k_range);
  write_sidecar(path + ".meta.json", "kick-transition", params, nullptr,
                timer.elapsed());
  return 0;
}

struct EvolveArgs {
  double mu = 3.0;
  double l = 1.0;
  std::string times = "0.07,15";
  std::string center_range;
  double domain = 200.0;
  double dx = 0.005;
  double dt = 2.5e-4;
  double boundary_tol = 1e-2;
};

int run_evolve(const EvolveArgs& a, const CommonOut& o) {
  Timer timer;
  if (a.mu < 0.0) throw CLI::ValidationError("--mu: must be >= 0");
  if (a.l < 0.0) throw CLI::ValidationError("--l: must be >= 0");

  std::vector<double> times;
  {
    std::stringstream ss(a.times);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        times.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--times: bad value '" + item + "'");
      }
    }
  }
  if (times.empty()) throw CLI::ValidationError("--times: need at least one");
  for (double t : times)
    if (!(t > 0.0)) throw CLI::ValidationError("--times: must be > 0");
  const double t_max = *std::max_element(times.begin(), times.end());

  std::vector<double> center_ts;
  if (!a.center_range.empty()) {
    center_ts = parse_range(a.center_range, "--center-range");
    for (double t : center_ts)
      if (!(t > 0.0))
        throw CLI::ValidationError("--center-range: times must be > 0");
  } else {
    for (double t = 0.1; t <= t_max + 0.05; t += 0.1) center_ts.push_back(t);
  }

  Grid grid{-a.domain, a.domain, a.dx, a.dt};
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(std::string("grid: ") + e.what());
  }

  const WaveField psi0 = sample_initial_state(grid, a.l);
  ScheduleStep step{0.0, t_max, {Well{0.0, a.mu}}};
  EvolveOptions eo;
  eo.snapshot_times = times;
  const EvolveResult evo = tdse_evolve(psi0, {step}, t_max, eo);

  if (evo.boundary_mass > a.boundary_tol) {
    std::fprintf(stderr,
                 "error: oracle boundary contamination: %.3g of the density "
                 "sits in the outer 10%% of the domain (tolerance %.3g); "
                 "enlarge --domain\n",
                 evo.boundary_mass, a.boundary_tol);
    return 3;
  }

  std::string stem = o.out.empty() ? "evolve" : o.out;
  const std::string suffix = o.json() ? ".json" : ".csv";
  if (stem.size() > suffix.size() &&
      stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
    stem.resize(stem.size() - suffix.size());

  const int n = grid.nodes();
  for (double t : times) {
    const WaveField* snap = nullptr;
    for (const WaveField& s : evo.snapshots)
      if (std::fabs(s.time - t) < 1e-9) snap = &s;
    if (!snap) throw std::runtime_error("internal: snapshot missing");

    const auto analytic =
        parallel_index_map<double>(n, [&](std::size_t i) {
          return std::norm(
              evolve_after_switch(grid.x(static_cast<int>(i)), t, a.mu, a.l));
        });

    Table tab;
    tab.columns = {unit("x"), unit("density_analytic"), unit("density_oracle"),
                   unit("density_initial")};
    tab.rows.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double x = grid.x(i);
      tab.rows.push_back({x, analytic[i], std::norm(snap->values[i]),
                          std::exp(-2.0 * std::fabs(x + a.l))});
    }
    emit(stem + "_t" + fmt_time(t) + suffix, "evolve", o.json(), tab);
  }

  // Center-density time series with its long-time plateau mu P(mu, l)
  // (the trapped component's density at the origin).
  const double plateau = a.mu * retention_probability(a.mu, a.l);
  const auto center =
      parallel_index_map<double>(center_ts.size(), [&](std::size_t i) {
        return std::norm(evolve_after_switch(0.0, center_ts[i], a.mu, a.l));
      });
  Table ct;
  ct.columns = {unit("t"), unit("density_center_analytic"), unit("asymptote")};
  for (std::size_t i = 0; i < center_ts.size(); ++i)
    ct.rows.push_back({center_ts[i], center[i], plateau});
  emit(stem + "_center" + suffix, "evolve", o.json(), ct);

  json params;
  params["mu"] = a.mu;
  params["l"] = a.l;
  params["times"] = times;
  write_sidecar(stem + ".meta.json", "evolve", params,
                grid_json(a.domain, a.dx, a.dt), timer.elapsed());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switchable delta-well trapping: datasets and validation"};
  app.require_subcommand(1);

  // Shared output flags, registered per subcommand.
  static long seed_sink = 0;
  auto add_out = [](CLI::App* sub, CommonOut& o) {
    sub->add_option("--out", o.out, "Output path (default <scenario>.csv)");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--seed", seed_sink,
                    "Reserved; no scenario uses randomness");
  };

  std::optional<double> mu, l, tau, k;
  std::string mu_range, l_range, tau_range, k_range;
  double delay_l = 1.0, trans_l = 2.0;
  CommonOut out_retention, out_delay, out_spectrum, out_retrap, out_kick,
      out_trans, out_evolve;
  EvolveArgs evolve_args;
  ValidationOptions vopt;

  CLI::App* c_ret = app.add_subcommand(
      "retention", "Instant-hop retention probability P(mu, l)");
  c_ret->add_option("--mu", mu, "Well strength");
  c_ret->add_option("--mu-range", mu_range, "Sweep start:stop:step");
  c_ret->add_option("--l", l, "Well shift");
  c_ret->add_option("--l-range", l_range, "Sweep start:stop:step");
  add_out(c_ret, out_retention);

  CLI::App* c_delay = app.add_subcommand(
      "delay", "Delayed re-switch retrapping probability |A(tau)|^2");
  c_delay->add_option("--l", delay_l, "Well shift")->required();
  c_delay->add_option("--tau", tau, "Re-switch delay");
  c_delay->add_option("--tau-range", tau_range, "Sweep start:stop:step");
  add_out(c_delay, out_delay);

  CLI::App* c_spec = app.add_subcommand(
      "dwp-spectrum", "Double-well bound-state energies vs separation");
  c_spec->add_option("--l", l, "Separation");
  c_spec->add_option("--l-range", l_range, "Sweep start:stop:step");
  add_out(c_spec, out_spectrum);

  CLI::App* c_retrap = app.add_subcommand(
      "retrap", "Double-well retrapping probabilities vs separation");
  c_retrap->add_option("--l", l, "Separation");
  c_retrap->add_option("--l-range", l_range, "Sweep start:stop:step");
  add_out(c_retrap, out_retrap);

  CLI::App* c_kick = app.add_subcommand(
      "kick-retention", "Post-kick retention probability (4/(4+k^2))^2");
  c_kick->add_option("--k", k, "Kick momentum");
  c_kick->add_option("--k-range", k_range, "Sweep start:stop:step");
  add_out(c_kick, out_kick);

  CLI::App* c_trans = app.add_subcommand(
      "kick-transition", "Kick-induced even->odd transition probability");
  c_trans->add_option("--l", trans_l, "Separation (> 1)")->required();
  c_trans->add_option("--k", k, "Kick momentum");
  c_trans->add_option("--k-range", k_range, "Sweep start:stop:step");
  add_out(c_trans, out_trans);

  CLI::App* c_evolve = app.add_subcommand(
      "evolve", "Post-switch density profiles: analytic vs oracle");
  c_evolve->add_option("--mu", evolve_args.mu, "New well strength (>= 0)")
      ->capture_default_str();
  c_evolve->add_option("--l", evolve_args.l, "Initial well shift")
      ->capture_default_str();
  c_evolve->add_option("--times", evolve_args.times,
                       "Comma-separated snapshot times (> 0)")
      ->capture_default_str();
  c_evolve->add_option("--center-range", evolve_args.center_range,
                       "Center-density series start:stop:step "
                       "(default 0.1:max(times):0.1)");
  c_evolve->add_option("--domain", evolve_args.domain,
                       "Oracle half-domain L (grid [-L, L])")
      ->capture_default_str();
  c_evolve->add_option("--dx", evolve_args.dx, "Oracle spatial step")
      ->capture_default_str();
  c_evolve->add_option("--dt", evolve_args.dt, "Oracle time step")
      ->capture_default_str();
  c_evolve->add_option("--boundary-tol", evolve_args.boundary_tol,
                       "Outer-10% mass above which the run aborts (exit 3)")
      ->capture_default_str();
  add_out(c_evolve, out_evolve);

  CLI::App* c_val = app.add_subcommand(
      "validate", "Run the analytic-vs-oracle validation suite");
  c_val->add_option("--domain", vopt.domain_half, "Oracle half-domain")
      ->capture_default_str();
  c_val->add_option("--dx", vopt.dx, "Oracle spatial step")
      ->capture_default_str();
  c_val->add_option("--dt", vopt.dt, "Oracle time step")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_ret))
      return run_retention(mu, mu_range, l, l_range, out_retention);
    if (app.got_subcommand(c_delay))
      return run_delay(delay_l, tau, tau_range, out_delay);
    if (app.got_subcommand(c_spec))
      return run_dwp_spectrum(l, l_range, out_spectrum);
    if (app.got_subcommand(c_retrap)) return run_retrap(l, l_range, out_retrap);
    if (app.got_subcommand(c_kick))
      return run_kick_retention(k, k_range, out_kick);
    if (app.got_subcommand(c_trans))
      return run_kick_transition(trans_l, k, k_range, out_trans);
    if (app.got_subcommand(c_evolve)) return run_evolve(evolve_args, out_evolve);
    if (app.got_subcommand(c_val)) {
      const int failures = report_checks(run_acceptance_checks(vopt));
      return failures == 0 ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const probability_range_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const no_bound_state_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
