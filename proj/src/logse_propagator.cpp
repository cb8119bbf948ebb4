#include "logdec/logse_propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace logdec {

void LogSEConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("logse: dt must be positive");
  if (!(hbar > 0.0) || !(mass > 0.0)) throw std::invalid_argument("logse: hbar and mass must be positive");
  scheme.validate();
}

LogSEPropagator::LogSEPropagator(GridPtr grid, LogSEConfig config)
    : grid_(std::move(grid)), config_(std::move(config)), fft_(grid_ ? grid_->N : 0) {
  config_.validate();
}

const CVector& LogSEPropagator::phase(double tau) const {
  auto it = phase_cache_.find(tau);
  if (it != phase_cache_.end()) return it->second;
  if (phase_cache_.size() > 16) phase_cache_.clear();
  const double c = config_.hbar / (2.0 * config_.mass) * tau;
  CVector u(grid_->N);
  for (int j = 0; j < grid_->N; ++j) u[j] = std::polar(1.0, -c * grid_->k[j] * grid_->k[j]);
  return phase_cache_.emplace(tau, std::move(u)).first->second;
}

void LogSEPropagator::kinetic(WaveState& s, double tau) const {
  if (tau == 0.0) return;
  fft_.forward(s.amplitudes.data());
  s.amplitudes.array() *= phase(tau).array();
  fft_.inverse(s.amplitudes.data());
}

bool LogSEPropagator::nonlinear_step(WaveState& s, double t_mid, double dt) const {
  const double big_gamma = config_.schedule.integral(t_mid - 0.5 * dt, t_mid + 0.5 * dt);
  const double c = config_.hbar / config_.mass * big_gamma;
  bool finite = true;
  for (auto& a : s.amplitudes) {
    if (c != 0.0) a *= std::polar(1.0, -c * reg_ln(config_.scheme, std::norm(a)));
    finite = finite && std::isfinite(a.real()) && std::isfinite(a.imag());
  }
  return finite;
}

bool LogSEPropagator::strang_step(WaveState& s, double dt) const {
  kinetic_half_step(s, dt);
  const bool ok = nonlinear_step(s, s.t + 0.5 * dt, dt);
  kinetic_half_step(s, dt);
  s.t += dt;
  return ok;
}

ObservableRecord LogSEPropagator::observe(const WaveState& s, const PropagateOptions& opt) const {
  ObservableRecord r;
  r.t = s.t;
  const RVector p = s.intensity();
  r.norm = quadrature(p, *grid_);
  r.width = ensemble_width(p, *grid_);
  r.kinetic_energy = kinetic_energy(s, config_.hbar, config_.mass);
  if (opt.visibility_window) {
    r.visibility = fringe_visibility(p, *grid_, opt.visibility_window->first, opt.visibility_window->second);
  }
  if (opt.track_zeros) r.zeros = find_zeros(p, *grid_, opt.zero_tol);
  return r;
}

LogSEResult LogSEPropagator::propagate(WaveState s, double t_final, const PropagateOptions& opt,
                                       const Hook& hook) const {
  if (s.grid != grid_ && (s.grid->N != grid_->N || s.grid->L != grid_->L)) {
    throw std::invalid_argument("logse propagate: state lives on a different grid");
  }
  if (opt.record_every < 1) throw std::invalid_argument("logse propagate: record_every must be >= 1");
  if (!s.amplitudes.allFinite()) throw std::invalid_argument("logse propagate: non-finite initial amplitudes");
  const double t0 = s.t;
  const double span = t_final - t0;
  if (span < -1e-12) throw std::invalid_argument("logse propagate: t_final precedes the state time");
  LogSEResult out{{}, s, std::nullopt};
  if (std::abs(span) <= 1e-12) return out;

  const double dt = config_.dt;
  const long n_steps = std::lround(std::ceil(span / dt - 1e-9));
  const double ke_slope = config_.schedule.lambda() * config_.hbar / config_.mass;

  auto record = [&](const WaveState& st) {
    ObservableRecord r = observe(st, opt);
    bool broke = !std::isfinite(r.kinetic_energy) || !std::isfinite(r.width);
    if (!broke && !out.series.empty()) {
      const auto& first = out.series.records.front();
      if (opt.breakdown == BreakdownRule::reference_growth) {
        broke = r.kinetic_energy > opt.breakdown_factor * (first.kinetic_energy + ke_slope * (st.t - first.t));
      } else if (opt.breakdown == BreakdownRule::record_jump) {
        broke = r.kinetic_energy > opt.breakdown_factor * out.series.records.back().kinetic_energy;
      }
    }
    out.series.append(std::move(r));
    if (hook) hook(st);
    return broke;
  };

  record(s);
  double pending = 0.0;
  for (long i = 1; i <= n_steps; ++i) {
    const double t_start = s.t;
    const double t_end = i == n_steps ? t_final : std::min(t_final, t0 + double(i) * dt);
    const double h = t_end - t_start;
    pending += 0.5 * h;
    kinetic(s, pending);
    pending = 0.0;
    const bool finite = nonlinear_step(s, t_start + 0.5 * h, h);
    pending += 0.5 * h;
    s.t = t_end;
    if (!finite) {
      out.t_breakdown = s.t;
      break;
    }
    if (i % opt.record_every == 0 || i == n_steps) {
      kinetic(s, pending);
      pending = 0.0;
      if (record(s)) {
        out.t_breakdown = s.t;
        break;
      }
    }
  }
  if (!out.t_breakdown) kinetic(s, pending);
  out.series.t_breakdown = out.t_breakdown;
  out.final_state = std::move(s);
  return out;
}

}  // namespace logdec
