#pragma once

#include <functional>
#include <map>
#include <optional>

#include "logdec/coupling_schedule.hpp"
#include "logdec/observables.hpp"
#include "logdec/reglog.hpp"

namespace logdec {

struct LogSEConfig {
  double dt = 0.05;
  RegLogScheme scheme{};
  CouplingSchedule schedule = CouplingSchedule::zero();
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const;
};

// Breakdown rules evaluated at every record.
//  reference_growth: KE(t) > factor * (KE(t0) + lambda hbar / m * (t - t0)),
//    the linear kinetic-energy growth of the JZME moment solution.
//  record_jump: KE(t_n) > factor * KE(t_{n-1}).
// A non-finite amplitude is always a breakdown.
enum class BreakdownRule { none, reference_growth, record_jump };

struct PropagateOptions {
  int record_every = 1;
  BreakdownRule breakdown = BreakdownRule::reference_growth;
  double breakdown_factor = 10.0;
  std::optional<std::pair<double, double>> visibility_window;
  bool track_zeros = false;
  double zero_tol = 1e-10;
};

struct LogSEResult {
  ObservableSeries series;
  WaveState final_state;
  std::optional<double> t_breakdown;
};

class LogSEPropagator {
 public:
  using Hook = std::function<void(const WaveState&)>;

  LogSEPropagator(GridPtr grid, LogSEConfig config);

  const LogSEConfig& config() const { return config_; }
  const GridPtr& grid() const { return grid_; }

  // Free flow for time tau: spectrum times exp(-i hbar k^2 tau / 2m).
  void kinetic(WaveState& s, double tau) const;
  void kinetic_half_step(WaveState& s, double dt) const { kinetic(s, 0.5 * dt); }
  // a <- a exp(-i (hbar/m) Gamma reg_ln(|a|^2)), Gamma = int gamma over [t_mid - dt/2, t_mid + dt/2].
  // Returns false if a non-finite amplitude was produced.
  bool nonlinear_step(WaveState& s, double t_mid, double dt) const;
  // half kinetic, full nonlinear, half kinetic; advances s.t by dt
  bool strang_step(WaveState& s, double dt) const;

  // Records at the start, every record_every steps and at t_final. The hook
  // sees the state at each record. Adjacent kinetic half steps are fused.
  LogSEResult propagate(WaveState s, double t_final, const PropagateOptions& opt = {}, const Hook& hook = {}) const;

  ObservableRecord observe(const WaveState& s, const PropagateOptions& opt) const;

 private:
  const CVector& phase(double tau) const;

  GridPtr grid_;
  LogSEConfig config_;
  Fft1D fft_;
  mutable std::map<double, CVector> phase_cache_;
};

}  // namespace logdec
