#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "logdec/density_state.hpp"

namespace logdec {

// Periodic four-point Lagrange interpolation of grid samples at x.
Complex interpolate_cubic(const CVector& f, const Grid1D& grid, double x);
double interpolate_cubic(const RVector& f, const Grid1D& grid, double x);

struct RefillFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // rms of the log-log fit residual
  bool flagged = false;   // residual above threshold or too few usable samples
};

// Least-squares slope of log(value) against log(tau). Non-positive samples are skipped.
RefillFit refill_exponent(const std::vector<double>& tau, const std::vector<double>& value,
                          double residual_threshold = 0.05);

// rho(x0, x0, t0 + tau) read from recorded diagonals with 0 < tau <= t_window.
RefillFit refill_exponent(const std::vector<double>& times, const std::vector<RVector>& diagonals, const Grid1D& grid,
                          double x0, double t0, double t_window, double residual_threshold = 0.05);

struct PinningThresholds {
  double logse_max = 1e-12;
  double jzme_min = 1e-6;
  double search_cells = 3.0;  // half-width of the per-frame search, in dx
  int subsamples = 64;        // search points per cell
  double min_spacing_cells = 4.0;
};

struct PinningRow {
  int zero_id = 0;
  double x0_initial = 0.0;
  double x_final = 0.0;
  double max_intensity_logse = 0.0;
  std::optional<double> max_rho_diag_jzme;
  std::string verdict;  // PASS, FAIL or LOST
};

struct PinningReport {
  std::vector<PinningRow> rows;
  bool vacuous() const { return rows.empty(); }
  bool all_pass() const;
};

// Follows each zero of the first frame through the LogSE frames with t <= horizon,
// moving to the sub-grid minimum of |a|^2 near its previous position. JZME
// diagonals, when given, belong to the same times and are read at the tracked position.
PinningReport pinning_witness(const std::vector<WaveState>& logse_frames, const std::vector<RVector>& jzme_diagonals,
                              const std::vector<double>& zero_set, double horizon, const PinningThresholds& th = {});

// CSV `zero_id,x0_initial,max_intensity_logse,max_rho_diag_jzme,verdict`
void write_pinning_csv(std::ostream& os, const PinningReport& r);

}  // namespace logdec
