#include "logdec/zero_pinning.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <stdexcept>

namespace logdec {

namespace {

template <typename Vec>
typename Vec::Scalar lagrange4(const Vec& f, const Grid1D& g, double x) {
  const double u = (x - g.x_min()) / g.dx;
  const double fl = std::floor(u);
  const double s = u - fl;
  const int j = static_cast<int>(fl);
  auto at = [&](int i) { return f[((i % g.N) + g.N) % g.N]; };
  const double w0 = -s * (s - 1) * (s - 2) / 6.0;
  const double w1 = (s + 1) * (s - 1) * (s - 2) / 2.0;
  const double w2 = -(s + 1) * s * (s - 2) / 2.0;
  const double w3 = (s + 1) * s * (s - 1) / 6.0;
  return w0 * at(j - 1) + w1 * at(j) + w2 * at(j + 1) + w3 * at(j + 2);
}

}  // namespace

Complex interpolate_cubic(const CVector& f, const Grid1D& grid, double x) { return lagrange4(f, grid, x); }
double interpolate_cubic(const RVector& f, const Grid1D& grid, double x) { return lagrange4(f, grid, x); }

RefillFit refill_exponent(const std::vector<double>& tau, const std::vector<double>& value, double residual_threshold) {
  if (tau.size() != value.size()) throw std::invalid_argument("refill_exponent: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] > 0.0 && value[i] > 0.0) {
      lx.push_back(std::log(tau[i]));
      ly.push_back(std::log(value[i]));
    }
  }
  RefillFit fit;
  if (lx.size() < 3) {
    fit.flagged = true;
    return fit;
  }
  const double n = double(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (intercept + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.flagged = fit.residual > residual_threshold;
  return fit;
}

RefillFit refill_exponent(const std::vector<double>& times, const std::vector<RVector>& diagonals, const Grid1D& grid,
                          double x0, double t0, double t_window, double residual_threshold) {
  if (times.size() != diagonals.size()) throw std::invalid_argument("refill_exponent: size mismatch");
  std::vector<double> tau, value;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double dt = times[i] - t0;
    if (dt <= 0.0 || dt > t_window * (1 + 1e-12)) continue;
    tau.push_back(dt);
    value.push_back(interpolate_cubic(diagonals[i], grid, x0));
  }
  return refill_exponent(tau, value, residual_threshold);
}

bool PinningReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const PinningRow& r) { return r.verdict == "PASS"; });
}

PinningReport pinning_witness(const std::vector<WaveState>& logse_frames, const std::vector<RVector>& jzme_diagonals,
                              const std::vector<double>& zero_set, double horizon, const PinningThresholds& th) {
  if (!jzme_diagonals.empty() && jzme_diagonals.size() != logse_frames.size()) {
    throw std::invalid_argument("pinning_witness: JZME diagonals must match the LogSE frames");
  }
  PinningReport report;
  if (logse_frames.empty()) return report;
  const Grid1D& g = *logse_frames.front().grid;
  const int samples = std::max(4, int(2.0 * th.search_cells * th.subsamples));

  std::vector<double> pos(zero_set.begin(), zero_set.end());
  std::vector<bool> lost(pos.size(), false);
  for (std::size_t z = 0; z < pos.size(); ++z) {
    PinningRow row;
    row.zero_id = int(z);
    row.x0_initial = pos[z];
    if (!jzme_diagonals.empty()) row.max_rho_diag_jzme = 0.0;
    report.rows.push_back(row);
  }

  for (std::size_t f = 0; f < logse_frames.size(); ++f) {
    const WaveState& w = logse_frames[f];
    if (w.t > horizon * (1 + 1e-12)) break;
    for (std::size_t z = 0; z < pos.size(); ++z) {
      if (lost[z]) continue;
      const double lo = pos[z] - th.search_cells * g.dx;
      const double step = 2.0 * th.search_cells * g.dx / samples;
      double best_x = pos[z];
      double best = std::numeric_limits<double>::infinity();
      int best_i = 0;
      for (int i = 0; i <= samples; ++i) {
        const double x = lo + i * step;
        const double v = std::norm(interpolate_cubic(w.amplitudes, g, x));
        if (v < best) {
          best = v;
          best_x = x;
          best_i = i;
        }
      }
      // a minimum pinned to the search edge means the zero outran the tracker
      if (f > 0 && (best_i == 0 || best_i == samples)) lost[z] = true;
      pos[z] = best_x;
      auto& row = report.rows[z];
      row.max_intensity_logse = std::max(row.max_intensity_logse, best);
      row.x_final = best_x;
      if (!jzme_diagonals.empty()) {
        const double d = interpolate_cubic(jzme_diagonals[f], g, best_x);
        row.max_rho_diag_jzme = std::max(*row.max_rho_diag_jzme, d);
      }
    }
    for (std::size_t a = 0; a < pos.size(); ++a) {
      for (std::size_t b = a + 1; b < pos.size(); ++b) {
        if (std::abs(pos[a] - pos[b]) < th.min_spacing_cells * g.dx) lost[a] = lost[b] = true;
      }
    }
  }

  for (std::size_t z = 0; z < pos.size(); ++z) {
    auto& row = report.rows[z];
    if (lost[z]) {
      row.verdict = "LOST";
    } else {
      const bool pinned = row.max_intensity_logse <= th.logse_max;
      const bool refilled = !row.max_rho_diag_jzme || *row.max_rho_diag_jzme > th.jzme_min;
      row.verdict = pinned && refilled ? "PASS" : "FAIL";
    }
  }
  return report;
}

void write_pinning_csv(std::ostream& os, const PinningReport& r) {
  os << "zero_id,x0_initial,max_intensity_logse,max_rho_diag_jzme,verdict\n" << std::setprecision(10);
  for (const auto& row : r.rows) {
    os << row.zero_id << ',' << row.x0_initial << ',' << row.max_intensity_logse << ',';
    if (row.max_rho_diag_jzme) os << *row.max_rho_diag_jzme;
    os << ',' << row.verdict << '\n';
  }
}

}  // namespace logdec
