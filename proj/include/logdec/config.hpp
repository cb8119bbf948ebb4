#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logdec/initial_states.hpp"
#include "logdec/reglog.hpp"

namespace logdec {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw value plus where it came from ("file.cfg:12" or "--set").
struct ConfigEntry {
  std::string value;
  std::string origin;
};
using KeyMap = std::map<std::string, ConfigEntry>;

struct RunConfig {
  struct {
    double L = 30.0;
    int N = 2048;
  } grid;
  struct {
    double dt = 0.05;
    double t_final = 4.0;
    int record_every = 1;
  } time;
  struct {
    std::string kind = "gaussian";  // gaussian | lorentzian | sech | twin_gaussian
    double b = 1.0;
    double s = 1.0;
    double x0 = 0.0;
    Parity parity = Parity::even;
  } ic;
  struct {
    double lambda = 1.0;
    double hbar = 1.0;
    double mass = 1.0;
  } physics;
  struct {
    std::string mode = "interp";  // interp | integral | zero
    double c0 = 0.0;
    std::optional<double> lambda;  // falls back to physics.lambda
    std::string calibrate = "none";  // none | width | long_time
    double calibration_window = 3.0;
  } gamma;
  RegLogScheme reglog{};
  std::string backend = "logse";  // logse | jzme | both
  struct {
    int N = 0;  // 0: same as grid.N
  } jzme;
  struct {
    std::string dir;
    bool emit_svg = false;
    std::vector<double> snapshot_times{0.0, 1.0, 2.0, 4.0};
    bool dump_rho = false;
    bool gamma_table = false;
  } output;
  struct {
    std::string rule = "reference_growth";  // reference_growth | record_jump | none
    double factor = 10.0;
  } breakdown;
  struct {
    std::vector<double> L_list{30.0, 60.0, 120.0, 240.0, 480.0};
    double t_max = 30.0;
  } scan;
  struct {
    double horizon = 1.0;
    double tol = 1e-10;
  } zero_pinning;
  std::optional<std::pair<double, double>> visibility_window;
  struct {
    double sigma_min = 0.0;
    double sigma_max = 16.0;
    double sigma_step = 0.5;
  } reg_sweep;

  double gamma_lambda() const { return gamma.lambda.value_or(physics.lambda); }
  int jzme_N() const { return jzme.N > 0 ? jzme.N : grid.N; }
};

// `key = value` per line, `#` starts a comment. Duplicate or malformed lines throw ConfigError.
KeyMap parse_config_text(const std::string& text, const std::string& source);
KeyMap load_config_file(const std::filesystem::path& path);
// `key=value`; overrides an existing entry.
void apply_override(KeyMap& map, const std::string& assignment);

// Validates every field; errors name the origin and the key.
RunConfig resolve_config(const KeyMap& map);

// Canonical key/value listing of a resolved config; feeding it back through
// parse_config_text + resolve_config reproduces the same RunConfig.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c);
std::string format_config(const RunConfig& c);

std::vector<std::string> known_config_keys();

}  // namespace logdec
