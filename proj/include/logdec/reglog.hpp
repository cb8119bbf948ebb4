#pragma once

#include <cmath>
#include <concepts>
#include <complex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace logdec {

struct RegLogScheme {
  enum class Kind { bare, shift_imag, root_average, rational };
  Kind kind = Kind::shift_imag;
  double sigma = 16.0;
  int n_roots = 4;
  double p = 1.0;

  static RegLogScheme bare() { return {Kind::bare, 0.0, 4, 1.0}; }
  static RegLogScheme shift_imag(double sigma) { return {Kind::shift_imag, sigma, 4, 1.0}; }
  static RegLogScheme root_average(double sigma, int n) { return {Kind::root_average, sigma, n, 1.0}; }
  static RegLogScheme rational(double sigma, double p) { return {Kind::rational, sigma, 4, p}; }

  void validate() const;
};

std::string to_string(RegLogScheme::Kind kind);
RegLogScheme::Kind parse_reglog_kind(const std::string& name);

// Regularized ln(x) for x >= 0. Templated so long double can cross-check double.
template <typename T>
T reg_ln(const RegLogScheme& s, T x) {
  using std::log;
  if (x < T(0)) throw std::domain_error("reg_ln: negative argument");
  const T eps = std::pow(T(10), -T(s.sigma));
  switch (s.kind) {
    case RegLogScheme::Kind::bare:
      if (x == T(0)) throw std::domain_error("reg_ln: bare logarithm of zero");
      return log(x);
    case RegLogScheme::Kind::shift_imag:
      return T(0.5) * log(x * x + eps * eps);
    case RegLogScheme::Kind::root_average: {
      // imaginary parts of conjugate roots cancel; keep only the real part
      T acc = 0;
      for (int k = 0; k < s.n_roots; ++k) {
        const T arg = T(2) * std::numbers::pi_v<T> * T(k) / T(s.n_roots);
        acc += log(std::abs(std::complex<T>(x + eps * std::cos(arg), eps * std::sin(arg))));
      }
      return acc / T(s.n_roots);
    }
    case RegLogScheme::Kind::rational: {
      const T xp = std::pow(x, T(s.p));
      if (xp == T(0)) return T(0);
      return xp / (xp + eps) * log(x + eps);
    }
  }
  throw std::logic_error("reg_ln: unknown scheme");
}

// Nodes and weights of a graded midpoint rule on (0, 1]: one panel per decade
// [10^-(d+1), 10^-d] for d < decades plus a final panel [0, 10^-decades].
struct UnitIntervalRule {
  std::vector<double> x;
  std::vector<double> w;
};
UnitIntervalRule make_unit_interval_rule(int decades = 40, int per_panel = 256);
const UnitIntervalRule& default_unit_interval_rule();

template <typename F>
  requires(std::invocable<F&, double> && !std::is_base_of_v<Eigen::EigenBase<std::decay_t<F>>, std::decay_t<F>>)
double l2_norm_unit_interval(F&& f, const UnitIntervalRule& rule = default_unit_interval_rule()) {
  long double acc = 0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double v = std::abs(f(rule.x[i]));
    if (!std::isfinite(v)) throw std::domain_error("l2_norm_unit_interval: non-finite sample");
    acc += static_cast<long double>(rule.w[i]) * v * v;
  }
  return std::sqrt(static_cast<double>(acc));
}

// Samples taken at the M uniform midpoints (i + 1/2)/M.
double l2_norm_unit_interval(const Eigen::Ref<const Eigen::VectorXd>& samples);

// Err(f, g) = ||f - g|| / sqrt(||f|| ||g||) on L2(0, 1].
template <typename F, typename G>
double rel_distance(F&& f, G&& g, const UnitIntervalRule& rule = default_unit_interval_rule()) {
  const double nf = l2_norm_unit_interval(f, rule);
  const double ng = l2_norm_unit_interval(g, rule);
  if (!(nf > 0.0) || !(ng > 0.0)) throw std::domain_error("rel_distance: zero-norm input");
  const double nd = l2_norm_unit_interval([&](double x) { return f(x) - g(x); }, rule);
  return nd / std::sqrt(nf * ng);
}

struct SweepRow {
  std::string scheme;
  double sigma;
  double err;
};

std::vector<SweepRow> regularization_sweep(const std::vector<RegLogScheme>& schemes, const std::vector<double>& sigmas);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace logdec
