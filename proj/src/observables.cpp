#include "logdec/observables.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

namespace logdec {

double DensityState::hermiticity_error() const {
  double worst = 0.0;
  const Eigen::Index n = rho.rows();
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index j = l; j < n; ++j) worst = std::max(worst, std::abs(rho(j, l) - std::conj(rho(l, j))));
  }
  return worst;
}

DensityState from_wavefunction(const WaveState& a) {
  return DensityState{a.amplitudes * a.amplitudes.adjoint(), a.t, a.grid};
}

void ObservableSeries::append(ObservableRecord r) {
  if (!records.empty() && !(r.t > records.back().t)) throw std::logic_error("ObservableSeries: time must increase");
  records.push_back(std::move(r));
}

std::vector<double> ObservableSeries::times() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.t);
  return out;
}

std::vector<double> ObservableSeries::widths() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.width);
  return out;
}

void write_series_csv(std::ostream& os, const ObservableSeries& s) {
  os << "t,width,coherence_length,norm,kinetic_energy,visibility,rel_l2_error\n";
  os << std::setprecision(12);
  auto opt = [&](const std::optional<double>& v) {
    if (v) os << *v;
  };
  for (const auto& r : s.records) {
    os << r.t << ',' << r.width << ',';
    opt(r.coherence_length);
    os << ',' << r.norm << ',' << r.kinetic_energy << ',';
    opt(r.visibility);
    os << ',';
    opt(r.rel_l2_error);
    os << '\n';
  }
}

double mean_position(const RVector& p, const Grid1D& grid) {
  const double mass = p.sum();
  if (!(mass > 0.0)) throw std::invalid_argument("mean_position: all-zero distribution");
  return p.dot(grid.x) / mass;
}

double coherence_length(const DensityState& s) {
  const Grid1D& g = *s.grid;
  const int n = g.N;
  if (s.rho.rows() != n || s.rho.cols() != n) throw std::invalid_argument("coherence_length: shape mismatch");
  std::vector<double> weight(2 * std::size_t(n) - 1, 0.0);
  for (int l = 0; l < n; ++l) {
    const Complex* col = s.rho.col(l).data();
    double* w = weight.data() + (n - 1 - l);
    for (int j = 0; j < n; ++j) w[j] += std::abs(col[j]);
  }
  double mass = 0.0, m1 = 0.0;
  for (int m = -(n - 1); m <= n - 1; ++m) {
    const double w = weight[std::size_t(m + n - 1)];
    mass += w;
    m1 += w * m * g.dx;
  }
  if (!(mass > 0.0)) throw std::invalid_argument("coherence_length: degenerate density matrix");
  const double mean = m1 / mass;
  double var = 0.0;
  for (int m = -(n - 1); m <= n - 1; ++m) {
    const double y = m * g.dx - mean;
    var += weight[std::size_t(m + n - 1)] * y * y;
  }
  return std::sqrt(var / mass);
}

double kinetic_energy(const WaveState& a, double hbar, double mass) {
  const Grid1D& g = *a.grid;
  const CVector spec = dft_forward(a.amplitudes);
  const RVector p = spec.cwiseAbs2();
  return hbar * hbar / (2.0 * mass) * p.dot(g.k.cwiseAbs2()) / p.sum();
}

double kinetic_energy(const DensityState& s, double hbar, double mass) {
  const Grid1D& g = *s.grid;
  const int n = g.N;
  // periodic sums along x - x' = m dx; their transform is rho_hat(k, -k)
  CVector diag_sum = CVector::Zero(n);
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) diag_sum[(j - l + n) % n] += s.rho(j, l);
  }
  const CVector spec = dft_forward(diag_sum);
  const RVector p = spec.real();
  return hbar * hbar / (2.0 * mass) * p.dot(g.k.cwiseAbs2()) / p.sum();
}

std::optional<double> fringe_visibility(const RVector& p, const Grid1D& grid, double x_lo, double x_hi) {
  if (p.size() != grid.N) throw std::invalid_argument("fringe_visibility: length mismatch");
  struct Extremum {
    bool is_max;
    double value;
  };
  std::vector<Extremum> ext;
  for (int i = 1; i + 1 < grid.N; ++i) {
    if (grid.x[i] < x_lo || grid.x[i] > x_hi) continue;
    if (p[i] > p[i - 1] && p[i] >= p[i + 1]) ext.push_back({true, p[i]});
    else if (p[i] < p[i - 1] && p[i] <= p[i + 1]) ext.push_back({false, p[i]});
  }
  std::optional<double> best_max;
  double best_min = 0.0;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    if (!ext[i].is_max) continue;
    double lowest = std::numeric_limits<double>::infinity();
    if (i > 0 && !ext[i - 1].is_max) lowest = std::min(lowest, ext[i - 1].value);
    if (i + 1 < ext.size() && !ext[i + 1].is_max) lowest = std::min(lowest, ext[i + 1].value);
    if (!std::isfinite(lowest)) continue;
    if (!best_max || ext[i].value > *best_max) {
      best_max = ext[i].value;
      best_min = lowest;
    }
  }
  if (!best_max || !(*best_max + best_min > 0.0)) return std::nullopt;
  return (*best_max - best_min) / (*best_max + best_min);
}

std::vector<double> find_zeros(const RVector& p, const Grid1D& grid, double tol, double floor_rel) {
  if (p.size() != grid.N) throw std::invalid_argument("find_zeros: length mismatch");
  if (!(tol > 0.0)) throw std::invalid_argument("find_zeros: tol must be positive");
  const int n = grid.N;
  auto at = [&](int i) { return p[((i % n) + n) % n]; };
  const double floor = floor_rel * p.maxCoeff();
  constexpr int kRiseCells = 16;
  auto rises = [&](int j, int dir) {
    for (int k = 1; k <= kRiseCells; ++k) {
      if (at(j + dir * k) >= floor) return true;
    }
    return false;
  };
  std::vector<double> zeros;
  for (int j = 0; j < n; ++j) {
    const double pm = at(j - 1), p0 = p[j], pp = at(j + 1);
    if (!(p0 < tol) || !(p0 <= pm) || !(p0 < pp)) continue;
    if (!rises(j, -1) || !rises(j, +1)) continue;
    double delta = 0.0;
    const double curv = pm - 2.0 * p0 + pp;
    if (curv > 0.0) delta = std::clamp(0.5 * (pm - pp) / curv, -0.5, 0.5);
    double x = grid.x[j] + delta * grid.dx;
    if (x < grid.x_min()) x += grid.L;
    if (x >= grid.x_min() + grid.L) x -= grid.L;
    zeros.push_back(x);
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

std::vector<double> find_zeros(const WaveState& a, double tol, double floor_rel) {
  return find_zeros(a.intensity(), *a.grid, tol, floor_rel);
}

double rel_l2_error(const DensityState& s, const WaveState& a) {
  const int n = s.grid->N;
  if (a.amplitudes.size() != n || s.rho.rows() != n) throw std::invalid_argument("rel_l2_error: grid mismatch");
  const double n_rho = s.rho.norm();
  const double n_a = a.amplitudes.squaredNorm();
  if (!(n_rho > 0.0) || !(n_a > 0.0)) throw std::domain_error("rel_l2_error: zero-norm input");
  double diff = 0.0;
  for (int l = 0; l < n; ++l) {
    diff += (s.rho.col(l) - a.amplitudes * std::conj(a.amplitudes[l])).squaredNorm();
  }
  return std::sqrt(diff) / std::sqrt(n_rho * n_a);
}

double rel_l2_error_diagonal(const DensityState& s, const WaveState& a) {
  if (a.amplitudes.size() != s.rho.rows()) throw std::invalid_argument("rel_l2_error_diagonal: grid mismatch");
  return rel_l2_distance(s.diagonal(), a.intensity());
}

}  // namespace logdec
