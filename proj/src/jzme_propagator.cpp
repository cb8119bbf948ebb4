#include "logdec/jzme_propagator.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include <json.hpp>

namespace logdec {

void JZMEConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("jzme: dt must be positive");
  if (!(lambda >= 0.0)) throw std::invalid_argument("jzme: lambda must be non-negative");
  if (!(hbar > 0.0) || !(mass > 0.0)) throw std::invalid_argument("jzme: hbar and mass must be positive");
}

JZMEPropagator::JZMEPropagator(GridPtr grid, JZMEConfig config)
    : grid_(std::move(grid)), config_(config), fft_(grid_ ? grid_->N : 0) {
  config_.validate();
}

const CVector& JZMEPropagator::phase(double tau) const {
  auto it = phase_cache_.find(tau);
  if (it != phase_cache_.end()) return it->second;
  if (phase_cache_.size() > 16) phase_cache_.clear();
  const double c = config_.hbar / (2.0 * config_.mass) * tau;
  CVector u(grid_->N);
  for (int j = 0; j < grid_->N; ++j) u[j] = std::polar(1.0, -c * grid_->k[j] * grid_->k[j]);
  return phase_cache_.emplace(tau, std::move(u)).first->second;
}

const RVector& JZMEPropagator::damping(double dt) const {
  auto it = damping_cache_.find(dt);
  if (it != damping_cache_.end()) return it->second;
  if (damping_cache_.size() > 16) damping_cache_.clear();
  const int n = grid_->N;
  const double c = config_.lambda / config_.hbar * dt;
  RVector d(2 * n - 1);
  for (int m = -(n - 1); m <= n - 1; ++m) {
    const double y = m * grid_->dx;
    d[m + n - 1] = std::exp(-c * y * y);
  }
  return damping_cache_.emplace(dt, std::move(d)).first->second;
}

void JZMEPropagator::kinetic(DensityState& s, double tau) const {
  if (tau == 0.0) return;
  const CVector& u = phase(tau);
  fft_.forward(s.rho.data());
  s.rho.array().colwise() *= u.array();
  s.rho.array().rowwise() *= u.conjugate().transpose().array();
  fft_.inverse(s.rho.data());
}

void JZMEPropagator::decoherence_step(DensityState& s, double dt) const {
  if (config_.lambda == 0.0 || dt == 0.0) return;
  const int n = grid_->N;
  const RVector& d = damping(dt);
  for (int l = 0; l < n; ++l) {
    Complex* col = s.rho.col(l).data();
    const double* w = d.data() + (n - 1 - l);
    for (int j = 0; j < n; ++j) col[j] *= w[j];
  }
}

void JZMEPropagator::strang_step(DensityState& s, double dt) const {
  kinetic_half_step(s, dt);
  decoherence_step(s, dt);
  kinetic_half_step(s, dt);
  s.t += dt;
}

ObservableRecord JZMEPropagator::observe(const DensityState& s, const PropagateOptions& opt) const {
  ObservableRecord r;
  r.t = s.t;
  const RVector p = s.diagonal();
  r.norm = s.trace();
  r.width = ensemble_width(p, *grid_);
  r.coherence_length = coherence_length(s);
  r.kinetic_energy = kinetic_energy(s, config_.hbar, config_.mass);
  r.hermiticity_error = s.hermiticity_error();
  if (opt.visibility_window) {
    r.visibility = fringe_visibility(p, *grid_, opt.visibility_window->first, opt.visibility_window->second);
  }
  return r;
}

JZMEResult JZMEPropagator::propagate(DensityState s, double t_final, const PropagateOptions& opt,
                                     const Hook& hook) const {
  if (s.rho.rows() != grid_->N || s.rho.cols() != grid_->N) {
    throw std::invalid_argument("jzme propagate: state does not match the grid");
  }
  if (opt.record_every < 1) throw std::invalid_argument("jzme propagate: record_every must be >= 1");
  const double t0 = s.t;
  const double span = t_final - t0;
  if (span < -1e-12) throw std::invalid_argument("jzme propagate: t_final precedes the state time");
  JZMEResult out{{}, s, std::nullopt};
  if (std::abs(span) <= 1e-12) return out;

  const double dt = config_.dt;
  const long n_steps = std::lround(std::ceil(span / dt - 1e-9));
  auto record = [&](const DensityState& st) {
    ObservableRecord r = observe(st, opt);
    const bool broke = !std::isfinite(r.kinetic_energy) || !std::isfinite(r.width) || !std::isfinite(r.norm);
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
    decoherence_step(s, h);
    pending += 0.5 * h;
    s.t = t_end;
    if (i % opt.record_every == 0 || i == n_steps) {
      kinetic(s, pending);
      pending = 0.0;
      if (record(s)) {
        out.t_breakdown = s.t;
        break;
      }
    }
  }
  out.series.t_breakdown = out.t_breakdown;
  out.final_state = std::move(s);
  return out;
}

void write_diagonal_csv(std::ostream& os, const DensityState& s) {
  os << "x,rho_diag\n" << std::setprecision(12);
  for (int j = 0; j < s.grid->N; ++j) os << s.grid->x[j] << ',' << s.rho(j, j).real() << '\n';
}

void write_wave_csv(std::ostream& os, const WaveState& s) {
  os << "x,re_a,im_a,intensity\n" << std::setprecision(12);
  for (int j = 0; j < s.grid->N; ++j) {
    const Complex a = s.amplitudes[j];
    os << s.grid->x[j] << ',' << a.real() << ',' << a.imag() << ',' << std::norm(a) << '\n';
  }
}

namespace {

void put_le(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  os.write(reinterpret_cast<const char*>(&bits), 8);
}

double get_le(std::istream& is) {
  std::uint64_t bits = 0;
  is.read(reinterpret_cast<char*>(&bits), 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void dump_density(const std::filesystem::path& path, const DensityState& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  const int n = s.grid->N;
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      put_le(os, s.rho(j, l).real());
      put_le(os, s.rho(j, l).imag());
    }
  }
  nlohmann::json meta{{"N", n}, {"L", s.grid->L}, {"t", s.t}};
  std::ofstream js(path.string() + ".json");
  js << meta.dump(2) << '\n';
}

DensityState load_density(const std::filesystem::path& path) {
  std::ifstream js(path.string() + ".json");
  if (!js) throw std::runtime_error("missing sidecar for " + path.string());
  const auto meta = nlohmann::json::parse(js);
  const int n = meta.at("N").get<int>();
  DensityState s{CMatrix(n, n), meta.at("t").get<double>(), make_shared_grid(meta.at("L").get<double>(), n)};
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      const double re = get_le(is);
      const double im = get_le(is);
      s.rho(j, l) = Complex(re, im);
    }
  }
  if (!is) throw std::runtime_error("truncated density dump " + path.string());
  return s;
}

}  // namespace logdec
