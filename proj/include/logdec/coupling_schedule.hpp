#pragma once

#include <memory>
#include <vector>

namespace logdec {

double characteristic_time(double lambda, double b, double hbar);

// (1 + tanh(t - t_b)) / 2
double sigmoid_blend(double t, double t_b);

// 2 lambda t (1 - s) + (c0 + lambda t / 2) s with s = sigmoid_blend(t, t_b)
double gamma_interp(double t, double lambda, double c0, double t_b);

// Piecewise-linear w(t) with a running trapezoid integral.
class WidthHistory {
 public:
  WidthHistory(std::vector<double> t, std::vector<double> w);

  double t_front() const { return t_.front(); }
  double t_back() const { return t_.back(); }
  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& widths() const { return w_; }

  double width(double t) const;
  // integral of the interpolant from t_front() to t
  double integral(double t) const;

 private:
  std::size_t segment(double t) const;

  std::vector<double> t_;
  std::vector<double> w_;
  std::vector<double> cumulative_;
};

// (2 lambda / hbar) (1 / w(t)) int_0^t w
double gamma_from_width(double t, double lambda, double hbar, const WidthHistory& history);

// Least-squares intercept of gamma against c0 + lambda t / 2 over [t_lo, t_hi].
// Requires t_lo >= 5 t_b and at least 10 samples in the window.
double fit_c0_from_gamma(const std::vector<double>& t, const std::vector<double>& gamma, double lambda, double t_b,
                         double t_lo, double t_hi);
double fit_c0(const WidthHistory& history, double lambda, double hbar, double t_b, double t_lo, double t_hi);

class CouplingSchedule {
 public:
  enum class Kind { zero, interp_linear, integral_of_width };

  static CouplingSchedule zero();
  static CouplingSchedule interp_linear(double lambda, double c0, double t_b);
  static CouplingSchedule integral_of_width(double lambda, double hbar, WidthHistory history);

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double c0() const { return c0_; }
  double t_b() const { return t_b_; }

  double value(double t) const;
  // int_{t0}^{t1} gamma, three-point Gauss-Legendre
  double integral(double t0, double t1) const;

 private:
  Kind kind_ = Kind::zero;
  double lambda_ = 0.0;
  double c0_ = 0.0;
  double t_b_ = 1.0;
  double hbar_ = 1.0;
  std::shared_ptr<const WidthHistory> history_;
};

}  // namespace logdec
