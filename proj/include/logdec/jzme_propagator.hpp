#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>

#include "logdec/logse_propagator.hpp"

namespace logdec {

struct JZMEConfig {
  double dt = 0.05;
  double lambda = 1.0;
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const;
};

struct JZMEResult {
  ObservableSeries series;
  DensityState final_state;
  std::optional<double> t_breakdown;
};

class JZMEPropagator {
 public:
  using Hook = std::function<void(const DensityState&)>;

  JZMEPropagator(GridPtr grid, JZMEConfig config);

  const JZMEConfig& config() const { return config_; }

  // rho_hat(k, k') times exp(-i hbar (k^2 - k'^2) tau / 2m), applied as
  // diag(u) rho_hat diag(conj u).
  void kinetic(DensityState& s, double tau) const;
  void kinetic_half_step(DensityState& s, double dt) const { kinetic(s, 0.5 * dt); }
  // rho(x, x') times exp(-(lambda/hbar) (x - x')^2 dt)
  void decoherence_step(DensityState& s, double dt) const;
  void strang_step(DensityState& s, double dt) const;

  JZMEResult propagate(DensityState s, double t_final, const PropagateOptions& opt = {}, const Hook& hook = {}) const;

  ObservableRecord observe(const DensityState& s, const PropagateOptions& opt) const;

 private:
  const CVector& phase(double tau) const;
  const RVector& damping(double dt) const;

  GridPtr grid_;
  JZMEConfig config_;
  Fft2D fft_;
  mutable std::map<double, CVector> phase_cache_;
  mutable std::map<double, RVector> damping_cache_;
};

// CSV `x,rho_diag`
void write_diagonal_csv(std::ostream& os, const DensityState& s);
// Row-major complex pairs as little-endian doubles, plus `<path>.json` with N, L and t.
void dump_density(const std::filesystem::path& path, const DensityState& s);
DensityState load_density(const std::filesystem::path& path);

// CSV `x,re_a,im_a,intensity`
void write_wave_csv(std::ostream& os, const WaveState& s);

}  // namespace logdec
