#include "logdec/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "logdec/moment_oracle.hpp"
#include "logdec/svg.hpp"
#include "logdec/zero_pinning.hpp"

namespace logdec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string iso_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_json(const RunConfig& c) {
  json j = json::object();
  for (const auto& [k, v] : config_entries(c)) j[k] = v;
  return j;
}

void write_run_json(const fs::path& out, const std::string& command, const RunConfig& c, const std::string& started,
                    const json& results) {
  json j;
  j["command"] = command;
  j["config"] = config_json(c);
  j["version"] = kVersion;
  j["results"] = results;
  j["metadata"] = {{"started", started}, {"finished", iso_now()}};
  std::ofstream os(out / "run.json");
  os << j.dump(2) << '\n';
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

std::string snapshot_name(double t, const char* backend) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_t%.3f_%s.csv", t, backend);
  return buf;
}

// Fires once per requested time, at the first record within half a step of it.
struct SnapshotPlan {
  std::vector<double> times;
  std::vector<bool> done;
  double half_step;

  SnapshotPlan(const std::vector<double>& t, double dt) : times(t), done(t.size(), false), half_step(0.5 * dt) {}

  template <typename F>
  void visit(double t, F&& write) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (!done[i] && std::abs(t - times[i]) <= half_step * (1 + 1e-9)) {
        done[i] = true;
        write(times[i]);
      }
    }
  }
};

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

struct LogSERun {
  LogSEResult result;
  std::vector<WaveState> frames;
};

LogSERun run_logse(const RunConfig& c, const GridPtr& grid, double t_final, bool keep_frames, bool track_zeros,
                   const fs::path* out, std::ostream& log) {
  LogSEPropagator prop(grid, make_logse_config(c, &log));
  PropagateOptions opt = make_options(c);
  opt.track_zeros = track_zeros;
  SnapshotPlan snaps(out ? c.output.snapshot_times : std::vector<double>{}, c.time.dt);
  LogSERun run{{{}, make_initial_state(c, grid), std::nullopt}, {}};
  run.result = prop.propagate(make_initial_state(c, grid), t_final, opt, [&](const WaveState& s) {
    if (keep_frames) run.frames.push_back(s);
    snaps.visit(s.t, [&](double ts) {
      auto os = open_out(*out / snapshot_name(ts, "logse"));
      write_wave_csv(os, s);
    });
  });
  return run;
}

struct JZMERun {
  JZMEResult result;
  std::vector<double> err2d;
  std::vector<double> err_diag;
  std::vector<RVector> diagonals;
};

JZMERun run_jzme(const RunConfig& c, const GridPtr& grid, double t_final, const std::vector<WaveState>* partner,
                 bool keep_diagonals, const fs::path* out) {
  JZMEPropagator prop(grid, make_jzme_config(c));
  SnapshotPlan snaps(out ? c.output.snapshot_times : std::vector<double>{}, c.time.dt);
  JZMERun run{{{}, {}, std::nullopt}, {}, {}, {}};
  std::size_t index = 0;
  run.result = prop.propagate(from_wavefunction(make_initial_state(c, grid)), t_final, make_options(c),
                              [&](const DensityState& s) {
                                if (partner && index < partner->size() &&
                                    std::abs((*partner)[index].t - s.t) < 1e-9) {
                                  run.err2d.push_back(rel_l2_error(s, (*partner)[index]));
                                  run.err_diag.push_back(rel_l2_error_diagonal(s, (*partner)[index]));
                                }
                                ++index;
                                if (keep_diagonals) run.diagonals.push_back(s.diagonal());
                                snaps.visit(s.t, [&](double ts) {
                                  auto os = open_out(*out / snapshot_name(ts, "jzme"));
                                  write_diagonal_csv(os, s);
                                  if (c.output.dump_rho) {
                                    char buf[64];
                                    std::snprintf(buf, sizeof buf, "rho_t%.3f.bin", ts);
                                    dump_density(*out / buf, s);
                                  }
                                });
                              });
  return run;
}

void write_gamma_table(const RunConfig& c, const fs::path& out, std::ostream& log) {
  const double lambda = c.gamma_lambda();
  if (!(lambda > 0.0)) {
    log << "gamma table skipped: lambda = 0\n";
    return;
  }
  const double t_b = characteristic_time(lambda, c.ic.b, c.physics.hbar);
  const CouplingSchedule interp = make_schedule(c);
  const WidthHistory hist = width_history(lambda, c.ic.b, 100.0 * t_b * 1.001, 1e-3 * t_b, c.physics.hbar,
                                          c.physics.mass);
  auto os = open_out(out / "gamma_table.csv");
  os << "t,gamma_interp,gamma_integral\n" << std::setprecision(12);
  std::vector<double> ts, gi, gw;
  for (int i = 0; i <= 200; ++i) {
    const double t = t_b * std::pow(10.0, -2.0 + 4.0 * i / 200.0);
    ts.push_back(t);
    gi.push_back(interp.value(t));
    gw.push_back(gamma_from_width(t, lambda, c.physics.hbar, hist));
    os << t << ',' << gi.back() << ',' << gw.back() << '\n';
  }
  if (c.output.emit_svg) {
    write_line_chart(out / "gamma_table.svg", {"coupling", "t", "gamma", true, true},
                     {{"interpolated", ts, gi}, {"integral of oracle width", ts, gw}});
  }
}

}  // namespace

GridPtr make_run_grid(const RunConfig& c, int N) { return make_shared_grid(c.grid.L, N); }

WaveState make_initial_state(const RunConfig& c, const GridPtr& grid) {
  if (c.ic.kind == "gaussian") return gaussian(grid, c.ic.b, c.ic.x0);
  if (c.ic.kind == "lorentzian") return lorentzian(grid, c.ic.b);
  if (c.ic.kind == "sech") return sech(grid, c.ic.b);
  if (c.ic.kind == "twin_gaussian") return twin_gaussian(grid, c.ic.b, c.ic.s, c.ic.parity);
  throw ConfigError("ic.kind: unknown initial state '" + c.ic.kind + "'");
}

CouplingSchedule make_schedule(const RunConfig& c, std::ostream* log) {
  const double lambda = c.gamma_lambda();
  if (c.gamma.mode == "zero" || !(lambda > 0.0)) return CouplingSchedule::zero();
  const double hbar = c.physics.hbar, mass = c.physics.mass, b = c.ic.b;
  const double t_b = characteristic_time(lambda, b, hbar);
  if (c.gamma.mode == "integral") {
    const double horizon = std::max({c.time.t_final, c.scan.t_max, c.zero_pinning.horizon}) * 1.01 + c.time.dt;
    return CouplingSchedule::integral_of_width(lambda, hbar, width_history(lambda, b, horizon, 1e-3 * t_b, hbar, mass));
  }
  double c0 = c.gamma.c0;
  if (c.gamma.calibrate == "width") {
    const auto cal = calibrate_c0_by_width(lambda, b, c.gamma.calibration_window * t_b, hbar, mass);
    c0 = cal.c0;
    if (log) *log << "gamma: c0 = " << c0 << " from width matching over [0, " << c.gamma.calibration_window
                  << " t_b] (moment-level max rel. width error " << cal.max_rel_width_error << ")\n";
  } else if (c.gamma.calibrate == "long_time") {
    const WidthHistory hist = width_history(lambda, b, 10.0 * t_b, 1e-2 * t_b, hbar, mass);
    c0 = fit_c0(hist, lambda, hbar, t_b, 5.0 * t_b, 10.0 * t_b);
    if (log) *log << "gamma: c0 = " << c0 << " from the long-time intercept over [5, 10] t_b\n";
  }
  return CouplingSchedule::interp_linear(lambda, c0, t_b);
}

LogSEConfig make_logse_config(const RunConfig& c, std::ostream* log) {
  LogSEConfig lc;
  lc.dt = c.time.dt;
  lc.scheme = c.reglog;
  lc.schedule = make_schedule(c, log);
  lc.hbar = c.physics.hbar;
  lc.mass = c.physics.mass;
  return lc;
}

JZMEConfig make_jzme_config(const RunConfig& c) {
  return {c.time.dt, c.physics.lambda, c.physics.hbar, c.physics.mass};
}

PropagateOptions make_options(const RunConfig& c) {
  PropagateOptions o;
  o.record_every = c.time.record_every;
  o.breakdown_factor = c.breakdown.factor;
  if (c.breakdown.rule == "none") o.breakdown = BreakdownRule::none;
  else if (c.breakdown.rule == "record_jump") o.breakdown = BreakdownRule::record_jump;
  else o.breakdown = BreakdownRule::reference_growth;
  o.visibility_window = c.visibility_window;
  o.zero_tol = c.zero_pinning.tol;
  return o;
}

std::vector<double> log_log_slope(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("log_log_slope: size mismatch");
  std::vector<double> out(t.size(), std::numeric_limits<double>::quiet_NaN());
  auto ok = [&](std::size_t i) { return t[i] > 0.0 && y[i] > 0.0; };
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (ok(i - 1) && ok(i) && ok(i + 1)) {
      out[i] = (std::log(y[i + 1]) - std::log(y[i - 1])) / (std::log(t[i + 1]) - std::log(t[i - 1]));
    }
  }
  return out;
}

std::optional<double> kink_time(const std::vector<double>& t, const std::vector<double>& w) {
  if (t.size() != w.size() || t.empty()) return std::nullopt;
  std::vector<double> dw(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) dw[i] = w[i] - w[0];
  const auto s = log_log_slope(t, dw);
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (std::isfinite(s[i - 1]) && std::isfinite(s[i]) && std::isfinite(s[i + 1]) && s[i] < s[i - 1] &&
        s[i] <= s[i + 1]) {
      return t[i];
    }
  }
  return std::nullopt;
}

std::optional<double> rise_time(const std::vector<double>& t, const std::vector<double>& err, double threshold) {
  for (std::size_t i = 0; i < std::min(t.size(), err.size()); ++i) {
    if (err[i] > threshold) return t[i];
  }
  return std::nullopt;
}

int thread_budget() {
  if (const char* env = std::getenv("LOGDEC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ScanRow> breakdown_scan(const RunConfig& base, int threads) {
  std::vector<ScanRow> rows;
  const double density = base.grid.N / base.grid.L;
  for (double L : base.scan.L_list) {
    ScanRow r;
    r.L = L;
    r.N = std::max(8, 2 * int(std::lround(0.5 * density * L)));
    rows.push_back(r);
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        RunConfig c = base;
        c.grid.L = rows[i].L;
        c.grid.N = rows[i].N;
        c.time.t_final = base.scan.t_max;
        const GridPtr grid = make_run_grid(c, c.grid.N);
        LogSEPropagator prop(grid, make_logse_config(c));
        PropagateOptions opt = make_options(c);
        opt.visibility_window.reset();
        const auto res = prop.propagate(make_initial_state(c, grid), c.scan.t_max, opt);
        rows[i].t_breakdown = res.t_breakdown;
        rows[i].censored = !res.t_breakdown;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n_workers = std::max(1, std::min<int>(threads, int(rows.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_breakdown_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "L,N,t_breakdown,censored\n" << std::setprecision(10);
  for (const auto& r : rows) {
    os << r.L << ',' << r.N << ',';
    if (r.t_breakdown) os << *r.t_breakdown;
    os << ',' << (r.censored ? "true" : "false") << '\n';
  }
}

int cmd_run(const RunConfig& c, const fs::path& out, std::ostream& log) {
  const std::string started = iso_now();
  fs::create_directories(out);
  json results = json::object();
  if (c.output.gamma_table) write_gamma_table(c, out, log);

  const bool want_logse = c.backend != "jzme";
  const bool want_jzme = c.backend != "logse";
  if (c.time.t_final == 0.0) {
    auto os = open_out(out / "series.csv");
    write_series_csv(os, {});
    results["t_breakdown"] = nullptr;
    write_run_json(out, "run", c, started, results);
    return kExitOk;
  }

  const GridPtr grid = make_run_grid(c, c.grid.N);
  std::optional<LogSERun> logse;
  std::optional<JZMERun> jzme;
  const bool paired = want_logse && want_jzme && c.jzme_N() == c.grid.N;
  if (want_logse) {
    logse = run_logse(c, grid, c.time.t_final, paired, false, &out, log);
    auto os = open_out(out / "series_logse.csv");
    write_series_csv(os, logse->result.series);
    results["t_breakdown"] = optional_json(logse->result.t_breakdown);
  }
  if (want_jzme) {
    const GridPtr jgrid = c.jzme_N() == c.grid.N ? grid : make_run_grid(c, c.jzme_N());
    jzme = run_jzme(c, jgrid, c.time.t_final, paired ? &logse->frames : nullptr, false, &out);
    for (std::size_t i = 0; i < jzme->err2d.size(); ++i) {
      jzme->result.series.records[i].rel_l2_error = jzme->err2d[i];
      if (logse && i < logse->result.series.records.size()) {
        logse->result.series.records[i].rel_l2_error = jzme->err2d[i];
      }
    }
    auto os = open_out(out / "series_jzme.csv");
    write_series_csv(os, jzme->result.series);
    if (!want_logse) results["t_breakdown"] = optional_json(jzme->result.t_breakdown);
  }
  const ObservableSeries& primary = logse ? logse->result.series : jzme->result.series;
  {
    auto os = open_out(out / "series.csv");
    write_series_csv(os, primary);
  }
  if (c.output.emit_svg) {
    std::vector<PlotSeries> curves;
    if (logse) curves.push_back({"LogSE", logse->result.series.times(), logse->result.series.widths()});
    if (jzme) curves.push_back({"JZME", jzme->result.series.times(), jzme->result.series.widths()});
    write_line_chart(out / "width.svg", {"ensemble width", "t", "w", false, false}, curves);
  }
  results["records"] = primary.records.size();
  const auto t_break = logse ? logse->result.t_breakdown : jzme->result.t_breakdown;
  write_run_json(out, "run", c, started, results);
  if (t_break) {
    log << "numerical breakdown at t = " << *t_break << "\n";
    return kExitBreakdown;
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& c, const fs::path& out, std::ostream& log) {
  if (c.jzme_N() != c.grid.N) {
    log << "error: grid mismatch between backends (grid.N = " << c.grid.N << ", jzme.N = " << c.jzme_N() << ")\n";
    return kExitFailure;
  }
  const std::string started = iso_now();
  fs::create_directories(out);
  const GridPtr grid = make_run_grid(c, c.grid.N);
  LogSERun logse = run_logse(c, grid, c.time.t_final, true, true, nullptr, log);
  JZMERun jzme = run_jzme(c, grid, c.time.t_final, &logse.frames, false, nullptr);

  const auto& ls = logse.result.series.records;
  const auto& js = jzme.result.series.records;
  const std::size_t n = std::min({ls.size(), js.size(), jzme.err2d.size()});
  std::vector<double> t, wl, wj, e2, ed;
  {
    auto os = open_out(out / "compare.csv");
    os << "t,width_logse,width_jzme,rel_l2_error,rel_l2_error_diag\n" << std::setprecision(12);
    for (std::size_t i = 0; i < n; ++i) {
      t.push_back(ls[i].t);
      wl.push_back(ls[i].width);
      wj.push_back(js[i].width);
      e2.push_back(jzme.err2d[i]);
      ed.push_back(jzme.err_diag[i]);
      os << t[i] << ',' << wl[i] << ',' << wj[i] << ',' << e2[i] << ',' << ed[i] << '\n';
    }
  }
  std::optional<double> first_zero;
  for (const auto& r : ls) {
    if (!r.zeros.empty()) {
      first_zero = r.t;
      break;
    }
  }
  json results;
  results["t_kink"] = optional_json(kink_time(t, wl));
  results["t_first_zero"] = optional_json(first_zero);
  results["t_error_rise_diag"] = optional_json(rise_time(t, ed, 0.1));
  results["t_breakdown"] = optional_json(logse.result.t_breakdown);
  {
    auto os = open_out(out / "summary.json");
    os << results.dump(2) << '\n';
  }
  if (c.output.emit_svg) {
    write_line_chart(out / "compare_width.svg", {"width relative to w(0)", "t", "w / w0", true, true},
                     {{"LogSE", t, wl}, {"JZME", t, wj}});
    write_line_chart(out / "compare_error.svg", {"relative L2 error", "t", "Err", false, true},
                     {{"2-D", t, e2}, {"diagonal", t, ed}});
  }
  write_run_json(out, "compare", c, started, results);
  return kExitOk;
}

int cmd_breakdown_scan(const RunConfig& c, const fs::path& out, std::ostream& log) {
  const std::string started = iso_now();
  fs::create_directories(out);
  const int threads = thread_budget();
  log << "breakdown scan over " << c.scan.L_list.size() << " lengths with " << threads << " thread(s)\n";
  const auto rows = breakdown_scan(c, threads);
  {
    auto os = open_out(out / "breakdown.csv");
    write_breakdown_csv(os, rows);
  }
  json results = json::array();
  std::vector<double> ls, ts;
  for (const auto& r : rows) {
    results.push_back({{"L", r.L}, {"N", r.N}, {"t_breakdown", optional_json(r.t_breakdown)}, {"censored", r.censored}});
    if (r.t_breakdown) {
      ls.push_back(r.L);
      ts.push_back(*r.t_breakdown);
    }
  }
  if (c.output.emit_svg) {
    write_line_chart(out / "breakdown.svg", {"breakdown time", "L", "t_breakdown", true, false}, {{"LogSE", ls, ts}});
  }
  write_run_json(out, "breakdown-scan", c, started, {{"rows", results}});
  return kExitOk;
}

int cmd_reg_sweep(const RunConfig& c, const fs::path& out, std::ostream&) {
  const std::string started = iso_now();
  fs::create_directories(out);
  std::vector<double> sigmas;
  const long steps = std::lround(std::floor((c.reg_sweep.sigma_max - c.reg_sweep.sigma_min) / c.reg_sweep.sigma_step + 1e-9));
  for (long i = 0; i <= steps; ++i) sigmas.push_back(c.reg_sweep.sigma_min + i * c.reg_sweep.sigma_step);
  const std::vector<RegLogScheme> schemes = {RegLogScheme::shift_imag(0.0),
                                             RegLogScheme::root_average(0.0, c.reglog.n_roots),
                                             RegLogScheme::rational(0.0, c.reglog.p)};
  const auto rows = regularization_sweep(schemes, sigmas);
  {
    auto os = open_out(out / "reg_sweep.csv");
    write_sweep_csv(os, rows);
  }
  if (c.output.emit_svg) {
    std::vector<PlotSeries> curves;
    for (const auto& s : schemes) {
      PlotSeries ps{to_string(s.kind), {}, {}};
      for (const auto& r : rows) {
        if (r.scheme == ps.name) {
          ps.x.push_back(r.sigma);
          ps.y.push_back(r.err);
        }
      }
      curves.push_back(std::move(ps));
    }
    write_line_chart(out / "reg_sweep.svg", {"regularized log distance", "sigma", "Err", false, true}, curves);
  }
  write_run_json(out, "reg-sweep", c, started, {{"rows", rows.size()}});
  return kExitOk;
}

int cmd_zero_pinning(const RunConfig& c, const fs::path& out, std::ostream& log) {
  const std::string started = iso_now();
  fs::create_directories(out);
  const GridPtr grid = make_run_grid(c, c.grid.N);
  const double horizon = c.zero_pinning.horizon;
  LogSERun logse = run_logse(c, grid, horizon, true, true, nullptr, log);
  const bool with_jzme = c.jzme_N() == c.grid.N && c.physics.lambda > 0.0;
  std::optional<JZMERun> jzme;
  if (with_jzme) jzme = run_jzme(c, grid, horizon, nullptr, true, nullptr);
  else log << "zero-pinning: JZME comparison skipped (needs jzme.N == grid.N and lambda > 0)\n";

  // zeros are collected at the first record that has any
  std::size_t start = logse.frames.size();
  std::vector<double> zero_set;
  for (std::size_t i = 0; i < logse.frames.size(); ++i) {
    zero_set = find_zeros(logse.frames[i], c.zero_pinning.tol);
    if (!zero_set.empty()) {
      start = i;
      break;
    }
  }
  PinningReport report;
  json refill = json::array();
  if (start < logse.frames.size()) {
    std::vector<WaveState> frames(logse.frames.begin() + long(start), logse.frames.end());
    std::vector<RVector> diags;
    if (jzme) diags.assign(jzme->diagonals.begin() + long(start), jzme->diagonals.end());
    if (diags.size() != frames.size()) diags.clear();
    report = pinning_witness(frames, diags, zero_set, horizon);
    if (jzme) {
      const double t0 = frames.front().t;
      const double t_b = c.physics.lambda > 0 ? characteristic_time(c.physics.lambda, c.ic.b, c.physics.hbar) : 1.0;
      const double window = std::min(0.2 * t_b, horizon - t0);
      std::vector<double> times;
      for (const auto& f : frames) times.push_back(f.t);
      auto os = open_out(out / "refill.csv");
      os << "zero_id,x0,exponent,residual,flagged\n" << std::setprecision(10);
      for (std::size_t z = 0; z < zero_set.size(); ++z) {
        const RefillFit fit = refill_exponent(times, diags, *grid, zero_set[z], t0, window);
        os << z << ',' << zero_set[z] << ',' << fit.exponent << ',' << fit.residual << ','
           << (fit.flagged ? "true" : "false") << '\n';
        refill.push_back({{"zero_id", z}, {"exponent", fit.exponent}, {"flagged", fit.flagged}});
      }
    }
  }
  {
    auto os = open_out(out / "pinning.csv");
    write_pinning_csv(os, report);
  }
  json results;
  results["zeros"] = report.rows.size();
  results["vacuous"] = report.vacuous();
  results["all_pass"] = report.all_pass();
  results["formation_time"] = start < logse.frames.size() ? json(logse.frames[start].t) : json(nullptr);
  results["refill"] = refill;
  log << "zero-pinning: " << report.rows.size() << " zero(s), "
      << (report.vacuous() ? "vacuous" : (report.all_pass() ? "all PASS" : "not all PASS")) << "\n";
  write_run_json(out, "zero-pinning", c, started, results);
  return kExitOk;
}

}  // namespace logdec
