#include "logdec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace logdec {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct FieldError {
  std::string what;
};

double to_double(const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || !std::isfinite(out)) throw FieldError{"expected a finite number"};
  return out;
}

int to_int(const std::string& v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw FieldError{"expected an integer"};
  return out;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw FieldError{"expected true or false"};
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

std::string one_of(const std::string& v, std::initializer_list<const char*> allowed) {
  std::string names;
  for (const char* a : allowed) {
    if (v == a) return v;
    names += (names.empty() ? "" : " | ") + std::string(a);
  }
  throw FieldError{"expected one of " + names};
}

double positive(double v) {
  if (!(v > 0.0)) throw FieldError{"must be positive"};
  return v;
}

double non_negative(double v) {
  if (!(v >= 0.0)) throw FieldError{"must be non-negative"};
  return v;
}

struct Field {
  const char* key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"grid.L", [](RunConfig& c, const std::string& v) { c.grid.L = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.grid.L); }},
      {"grid.N",
       [](RunConfig& c, const std::string& v) {
         const int n = to_int(v);
         if (n < 8 || n % 2 != 0) throw FieldError{"expected an even integer >= 8"};
         c.grid.N = n;
       },
       [](const RunConfig& c) { return std::to_string(c.grid.N); }},
      {"time.dt", [](RunConfig& c, const std::string& v) { c.time.dt = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.time.dt); }},
      {"time.t_final", [](RunConfig& c, const std::string& v) { c.time.t_final = non_negative(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.time.t_final); }},
      {"time.record_every",
       [](RunConfig& c, const std::string& v) {
         c.time.record_every = to_int(v);
         if (c.time.record_every < 1) throw FieldError{"must be >= 1"};
       },
       [](const RunConfig& c) { return std::to_string(c.time.record_every); }},
      {"ic.kind",
       [](RunConfig& c, const std::string& v) {
         c.ic.kind = one_of(v, {"gaussian", "lorentzian", "sech", "twin_gaussian"});
       },
       [](const RunConfig& c) { return c.ic.kind; }},
      {"ic.b", [](RunConfig& c, const std::string& v) { c.ic.b = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.ic.b); }},
      {"ic.s", [](RunConfig& c, const std::string& v) { c.ic.s = non_negative(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.ic.s); }},
      {"ic.x0", [](RunConfig& c, const std::string& v) { c.ic.x0 = to_double(v); },
       [](const RunConfig& c) { return fmt(c.ic.x0); }},
      {"ic.parity",
       [](RunConfig& c, const std::string& v) {
         c.ic.parity = one_of(v, {"even", "odd"}) == "even" ? Parity::even : Parity::odd;
       },
       [](const RunConfig& c) { return std::string(c.ic.parity == Parity::even ? "even" : "odd"); }},
      {"physics.lambda", [](RunConfig& c, const std::string& v) { c.physics.lambda = non_negative(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.physics.lambda); }},
      {"physics.hbar", [](RunConfig& c, const std::string& v) { c.physics.hbar = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.physics.hbar); }},
      {"physics.mass", [](RunConfig& c, const std::string& v) { c.physics.mass = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.physics.mass); }},
      {"gamma.mode", [](RunConfig& c, const std::string& v) { c.gamma.mode = one_of(v, {"interp", "integral", "zero"}); },
       [](const RunConfig& c) { return c.gamma.mode; }},
      {"gamma.c0", [](RunConfig& c, const std::string& v) { c.gamma.c0 = to_double(v); },
       [](const RunConfig& c) { return fmt(c.gamma.c0); }},
      {"gamma.lambda",
       [](RunConfig& c, const std::string& v) {
         if (v == "physics") c.gamma.lambda.reset();
         else c.gamma.lambda = non_negative(to_double(v));
       },
       [](const RunConfig& c) { return c.gamma.lambda ? fmt(*c.gamma.lambda) : std::string("physics"); }},
      {"gamma.calibrate",
       [](RunConfig& c, const std::string& v) { c.gamma.calibrate = one_of(v, {"none", "width", "long_time"}); },
       [](const RunConfig& c) { return c.gamma.calibrate; }},
      {"gamma.calibration_window",
       [](RunConfig& c, const std::string& v) { c.gamma.calibration_window = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.gamma.calibration_window); }},
      {"reglog.scheme",
       [](RunConfig& c, const std::string& v) {
         try {
           c.reglog.kind = parse_reglog_kind(v);
         } catch (const std::invalid_argument&) {
           throw FieldError{"expected one of bare | shift_imag | root_average | rational"};
         }
       },
       [](const RunConfig& c) { return to_string(c.reglog.kind); }},
      {"reglog.sigma", [](RunConfig& c, const std::string& v) { c.reglog.sigma = non_negative(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.reglog.sigma); }},
      {"reglog.n_roots",
       [](RunConfig& c, const std::string& v) {
         c.reglog.n_roots = to_int(v);
         if (c.reglog.n_roots < 1) throw FieldError{"must be >= 1"};
       },
       [](const RunConfig& c) { return std::to_string(c.reglog.n_roots); }},
      {"reglog.p",
       [](RunConfig& c, const std::string& v) {
         c.reglog.p = to_double(v);
         if (!(c.reglog.p >= 1.0)) throw FieldError{"must be >= 1"};
       },
       [](const RunConfig& c) { return fmt(c.reglog.p); }},
      {"backend", [](RunConfig& c, const std::string& v) { c.backend = one_of(v, {"logse", "jzme", "both"}); },
       [](const RunConfig& c) { return c.backend; }},
      {"jzme.N",
       [](RunConfig& c, const std::string& v) {
         const int n = to_int(v);
         if (n != 0 && (n < 8 || n % 2 != 0)) throw FieldError{"expected 0 or an even integer >= 8"};
         c.jzme.N = n;
       },
       [](const RunConfig& c) { return std::to_string(c.jzme.N); }},
      {"output.dir", [](RunConfig& c, const std::string& v) { c.output.dir = v; },
       [](const RunConfig& c) { return c.output.dir; }},
      {"output.emit_svg", [](RunConfig& c, const std::string& v) { c.output.emit_svg = to_bool(v); },
       [](const RunConfig& c) { return std::string(c.output.emit_svg ? "true" : "false"); }},
      {"output.snapshot_times",
       [](RunConfig& c, const std::string& v) {
         c.output.snapshot_times = to_list(v);
         for (double t : c.output.snapshot_times) non_negative(t);
       },
       [](const RunConfig& c) { return fmt_list(c.output.snapshot_times); }},
      {"output.dump_rho", [](RunConfig& c, const std::string& v) { c.output.dump_rho = to_bool(v); },
       [](const RunConfig& c) { return std::string(c.output.dump_rho ? "true" : "false"); }},
      {"output.gamma_table", [](RunConfig& c, const std::string& v) { c.output.gamma_table = to_bool(v); },
       [](const RunConfig& c) { return std::string(c.output.gamma_table ? "true" : "false"); }},
      {"breakdown.rule",
       [](RunConfig& c, const std::string& v) {
         c.breakdown.rule = one_of(v, {"reference_growth", "record_jump", "none"});
       },
       [](const RunConfig& c) { return c.breakdown.rule; }},
      {"breakdown.factor",
       [](RunConfig& c, const std::string& v) {
         c.breakdown.factor = to_double(v);
         if (!(c.breakdown.factor > 1.0)) throw FieldError{"must exceed 1"};
       },
       [](const RunConfig& c) { return fmt(c.breakdown.factor); }},
      {"scan.L_list",
       [](RunConfig& c, const std::string& v) {
         c.scan.L_list = to_list(v);
         if (c.scan.L_list.empty()) throw FieldError{"needs at least one length"};
         for (std::size_t i = 0; i < c.scan.L_list.size(); ++i) {
           positive(c.scan.L_list[i]);
           if (i > 0 && !(c.scan.L_list[i] > c.scan.L_list[i - 1])) throw FieldError{"lengths must increase"};
         }
       },
       [](const RunConfig& c) { return fmt_list(c.scan.L_list); }},
      {"scan.t_max", [](RunConfig& c, const std::string& v) { c.scan.t_max = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.scan.t_max); }},
      {"zero_pinning.horizon",
       [](RunConfig& c, const std::string& v) { c.zero_pinning.horizon = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.zero_pinning.horizon); }},
      {"zero_pinning.tol", [](RunConfig& c, const std::string& v) { c.zero_pinning.tol = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.zero_pinning.tol); }},
      {"observe.visibility_window",
       [](RunConfig& c, const std::string& v) {
         if (v == "none") {
           c.visibility_window.reset();
           return;
         }
         const auto w = to_list(v);
         if (w.size() != 2 || !(w[1] > w[0])) throw FieldError{"expected none or x_lo,x_hi with x_lo < x_hi"};
         c.visibility_window = std::make_pair(w[0], w[1]);
       },
       [](const RunConfig& c) {
         return c.visibility_window ? fmt_list({c.visibility_window->first, c.visibility_window->second})
                                    : std::string("none");
       }},
      {"reg_sweep.sigma_min",
       [](RunConfig& c, const std::string& v) { c.reg_sweep.sigma_min = non_negative(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.reg_sweep.sigma_min); }},
      {"reg_sweep.sigma_max",
       [](RunConfig& c, const std::string& v) { c.reg_sweep.sigma_max = non_negative(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.reg_sweep.sigma_max); }},
      {"reg_sweep.sigma_step",
       [](RunConfig& c, const std::string& v) { c.reg_sweep.sigma_step = positive(to_double(v)); },
       [](const RunConfig& c) { return fmt(c.reg_sweep.sigma_step); }},
  };
  return table;
}

}  // namespace

KeyMap parse_config_text(const std::string& text, const std::string& source) {
  KeyMap map;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string origin = source + ":" + std::to_string(number);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ": missing key");
    if (map.count(key)) throw ConfigError(origin + ": duplicate key '" + key + "' (first at " + map[key].origin + ")");
    map[key] = {value, origin};
  }
  return map;
}

KeyMap load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

void apply_override(KeyMap& map, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--set: expected key=value, got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("--set: missing key in '" + assignment + "'");
  map[key] = {trim(assignment.substr(eq + 1)), "--set"};
}

RunConfig resolve_config(const KeyMap& map) {
  RunConfig c;
  for (const auto& [key, entry] : map) {
    const auto& table = fields();
    auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return key == f.key; });
    if (it == table.end()) throw ConfigError(entry.origin + ": unknown key '" + key + "'");
    try {
      it->set(c, entry.value);
    } catch (const FieldError& e) {
      throw ConfigError(entry.origin + ": " + key + ": " + e.what + ", got '" + entry.value + "'");
    }
  }
  auto fail = [&](const std::string& key, const std::string& why) {
    auto it = map.find(key);
    throw ConfigError((it != map.end() ? it->second.origin : std::string("defaults")) + ": " + key + ": " + why);
  };
  if (c.time.dt > c.time.t_final && c.time.t_final > 0.0) fail("time.dt", "larger than time.t_final");
  if (c.reg_sweep.sigma_max < c.reg_sweep.sigma_min) fail("reg_sweep.sigma_max", "below reg_sweep.sigma_min");
  if (c.ic.kind == "gaussian" && c.grid.L < 10.0 * c.ic.b) fail("grid.L", "must be at least 10 * ic.b for a Gaussian");
  if (c.gamma.mode == "integral" && !(c.gamma_lambda() > 0.0)) fail("gamma.mode", "integral mode needs lambda > 0");
  if (c.gamma.calibrate != "none" && !(c.gamma_lambda() > 0.0)) fail("gamma.calibrate", "calibration needs lambda > 0");
  return c;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) out.emplace_back(f.key, f.get(c));
  return out;
}

std::string format_config(const RunConfig& c) {
  std::string out;
  for (const auto& [k, v] : config_entries(c)) out += k + " = " + v + "\n";
  return out;
}

std::vector<std::string> known_config_keys() {
  std::vector<std::string> out;
  for (const auto& f : fields()) out.emplace_back(f.key);
  return out;
}

}  // namespace logdec
