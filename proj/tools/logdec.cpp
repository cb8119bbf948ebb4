// logdec run|compare|breakdown-scan|reg-sweep|zero-pinning --config <file> [--set key=value ...] --out <dir>

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logdec/experiments.hpp"

namespace {

struct Options {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "flat key = value config file");
  sub->add_option("--set", o.sets, "override a config key (key=value), repeatable");
  sub->add_option("--out", o.out, "output directory (defaults to output.dir)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LogSE vs Joos-Zeh decoherence toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", logdec::kVersion);
  Options opt;
  using Command = int (*)(const logdec::RunConfig&, const std::filesystem::path&, std::ostream&);
  const std::vector<std::pair<std::string, Command>> commands = {
      {"run", logdec::cmd_run},
      {"compare", logdec::cmd_compare},
      {"breakdown-scan", logdec::cmd_breakdown_scan},
      {"reg-sweep", logdec::cmd_reg_sweep},
      {"zero-pinning", logdec::cmd_zero_pinning},
  };
  for (const auto& [name, fn] : commands) add_common(app.add_subcommand(name), opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : logdec::kExitFailure;
  }

  logdec::RunConfig config;
  try {
    logdec::KeyMap map = opt.config.empty() ? logdec::KeyMap{} : logdec::load_config_file(opt.config);
    for (const auto& s : opt.sets) logdec::apply_override(map, s);
    config = logdec::resolve_config(map);
  } catch (const logdec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return logdec::kExitFailure;
  }
  const std::string out = !opt.out.empty() ? opt.out : config.output.dir;
  if (out.empty()) {
    std::cerr << "config error: no output directory (pass --out or set output.dir)\n";
    return logdec::kExitFailure;
  }
  config.output.dir = out;

  for (const auto& [name, fn] : commands) {
    if (!app.got_subcommand(name)) continue;
    try {
      return fn(config, out, std::cerr);
    } catch (const logdec::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return logdec::kExitFailure;
    } catch (const std::exception& e) {
      std::cerr << name << " failed: " << e.what() << '\n';
      return logdec::kExitFailure;
    }
  }
  return logdec::kExitFailure;
}
