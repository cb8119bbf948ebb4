#include "logdec/coupling_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace logdec {

double characteristic_time(double lambda, double b, double hbar) {
  if (!(lambda > 0.0) || !(b > 0.0) || !(hbar > 0.0)) {
    throw std::invalid_argument("characteristic_time: lambda, b and hbar must be positive");
  }
  return hbar / (lambda * b * b);
}

double sigmoid_blend(double t, double t_b) { return 0.5 * (1.0 + std::tanh(t - t_b)); }

double gamma_interp(double t, double lambda, double c0, double t_b) {
  const double s = sigmoid_blend(t, t_b);
  return 2.0 * lambda * t * (1.0 - s) + (c0 + 0.5 * lambda * t) * s;
}

WidthHistory::WidthHistory(std::vector<double> t, std::vector<double> w) : t_(std::move(t)), w_(std::move(w)) {
  if (t_.size() != w_.size() || t_.size() < 2) throw std::invalid_argument("WidthHistory: need >= 2 matched samples");
  cumulative_.assign(t_.size(), 0.0);
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!(w_[i] > 0.0)) throw std::invalid_argument("WidthHistory: widths must be positive");
    if (i > 0) {
      if (!(t_[i] > t_[i - 1])) throw std::invalid_argument("WidthHistory: times must increase strictly");
      cumulative_[i] = cumulative_[i - 1] + 0.5 * (w_[i] + w_[i - 1]) * (t_[i] - t_[i - 1]);
    }
  }
}

std::size_t WidthHistory::segment(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t_.back()));
  if (t < t_.front() - slack || t > t_.back() + slack) {
    throw std::out_of_range("WidthHistory: t=" + std::to_string(t) + " outside [" + std::to_string(t_.front()) + ", " +
                            std::to_string(t_.back()) + "]");
  }
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = it == t_.begin() ? 0 : std::size_t(it - t_.begin()) - 1;
  return std::min(i, t_.size() - 2);
}

double WidthHistory::width(double t) const {
  const std::size_t i = segment(t);
  const double u = (t - t_[i]) / (t_[i + 1] - t_[i]);
  return w_[i] + u * (w_[i + 1] - w_[i]);
}

double WidthHistory::integral(double t) const {
  const std::size_t i = segment(t);
  return cumulative_[i] + 0.5 * (w_[i] + width(t)) * (t - t_[i]);
}

double gamma_from_width(double t, double lambda, double hbar, const WidthHistory& history) {
  return 2.0 * lambda / hbar * history.integral(t) / history.width(t);
}

double fit_c0_from_gamma(const std::vector<double>& t, const std::vector<double>& gamma, double lambda, double t_b,
                         double t_lo, double t_hi) {
  if (t.size() != gamma.size()) throw std::invalid_argument("fit_c0: size mismatch");
  if (t_lo < 5.0 * t_b) throw std::invalid_argument("fit_c0: window must lie in the long-time regime t >= 5 t_b");
  double acc = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t_lo && t[i] <= t_hi) {
      acc += gamma[i] - 0.5 * lambda * t[i];
      ++n;
    }
  }
  if (n < 10) throw std::invalid_argument("fit_c0: fewer than 10 samples in the fit window");
  return acc / n;
}

double fit_c0(const WidthHistory& history, double lambda, double hbar, double t_b, double t_lo, double t_hi) {
  std::vector<double> g;
  g.reserve(history.times().size());
  for (double t : history.times()) g.push_back(gamma_from_width(t, lambda, hbar, history));
  return fit_c0_from_gamma(history.times(), g, lambda, t_b, t_lo, t_hi);
}

CouplingSchedule CouplingSchedule::zero() { return {}; }

CouplingSchedule CouplingSchedule::interp_linear(double lambda, double c0, double t_b) {
  if (!(lambda >= 0.0) || !(t_b > 0.0)) throw std::invalid_argument("interp_linear: need lambda >= 0 and t_b > 0");
  CouplingSchedule s;
  s.kind_ = Kind::interp_linear;
  s.lambda_ = lambda;
  s.c0_ = c0;
  s.t_b_ = t_b;
  return s;
}

CouplingSchedule CouplingSchedule::integral_of_width(double lambda, double hbar, WidthHistory history) {
  if (!(lambda >= 0.0) || !(hbar > 0.0)) throw std::invalid_argument("integral_of_width: need lambda >= 0, hbar > 0");
  CouplingSchedule s;
  s.kind_ = Kind::integral_of_width;
  s.lambda_ = lambda;
  s.hbar_ = hbar;
  s.history_ = std::make_shared<const WidthHistory>(std::move(history));
  return s;
}

double CouplingSchedule::value(double t) const {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::interp_linear: return gamma_interp(t, lambda_, c0_, t_b_);
    case Kind::integral_of_width: return gamma_from_width(t, lambda_, hbar_, *history_);
  }
  return 0.0;
}

double CouplingSchedule::integral(double t0, double t1) const {
  if (kind_ == Kind::zero) return 0.0;
  const double mid = 0.5 * (t0 + t1);
  const double half = 0.5 * (t1 - t0);
  const double node = std::sqrt(0.6);
  return half * (5.0 / 9.0 * value(mid - half * node) + 8.0 / 9.0 * value(mid) + 5.0 / 9.0 * value(mid + half * node));
}

}  // namespace logdec
