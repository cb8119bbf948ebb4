#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "logdec/config.hpp"
#include "logdec/jzme_propagator.hpp"
#include "logdec/logse_propagator.hpp"

namespace logdec {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitBreakdown = 2 };

// Builders shared by the commands and the test suites.
GridPtr make_run_grid(const RunConfig& c, int N);
WaveState make_initial_state(const RunConfig& c, const GridPtr& grid);
// Resolves gamma.mode and gamma.calibrate; notes go to log when given.
CouplingSchedule make_schedule(const RunConfig& c, std::ostream* log = nullptr);
LogSEConfig make_logse_config(const RunConfig& c, std::ostream* log = nullptr);
JZMEConfig make_jzme_config(const RunConfig& c);
PropagateOptions make_options(const RunConfig& c);

// d log y / d log t by centred differences over samples with t > 0 and y > 0.
std::vector<double> log_log_slope(const std::vector<double>& t, const std::vector<double>& y);

// First interior local minimum of d log(w - w(0)) / d log t.
std::optional<double> kink_time(const std::vector<double>& t, const std::vector<double>& w);

// First time at which err exceeds threshold.
std::optional<double> rise_time(const std::vector<double>& t, const std::vector<double>& err, double threshold);

// Worker count for sweeps: LOGDEC_THREADS when set and positive, otherwise hardware concurrency.
int thread_budget();

struct ScanRow {
  double L = 0.0;
  int N = 0;
  std::optional<double> t_breakdown;
  bool censored = false;
};

// One LogSE run per length with the grid density of the base config held fixed.
std::vector<ScanRow> breakdown_scan(const RunConfig& base, int threads);
void write_breakdown_csv(std::ostream& os, const std::vector<ScanRow>& rows);

int cmd_run(const RunConfig& c, const std::filesystem::path& out, std::ostream& log);
int cmd_compare(const RunConfig& c, const std::filesystem::path& out, std::ostream& log);
int cmd_breakdown_scan(const RunConfig& c, const std::filesystem::path& out, std::ostream& log);
int cmd_reg_sweep(const RunConfig& c, const std::filesystem::path& out, std::ostream& log);
int cmd_zero_pinning(const RunConfig& c, const std::filesystem::path& out, std::ostream& log);

}  // namespace logdec
