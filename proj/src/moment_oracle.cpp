#include "logdec/moment_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <stdexcept>

namespace logdec {

namespace {

struct Deriv {
  double xx, xp, pp;
};

GaussianMoments advance(const GaussianMoments& m, const Deriv& d, double h) {
  return {m.xx + h * d.xx, m.xp + h * d.xp, m.pp + h * d.pp, m.t + h};
}

template <typename F>
GaussianMoments rk4(const GaussianMoments& m, double dt, F&& rhs) {
  const Deriv k1 = rhs(m);
  const Deriv k2 = rhs(advance(m, k1, 0.5 * dt));
  const Deriv k3 = rhs(advance(m, k2, 0.5 * dt));
  const Deriv k4 = rhs(advance(m, k3, dt));
  GaussianMoments out;
  out.xx = m.xx + dt / 6.0 * (k1.xx + 2 * k2.xx + 2 * k3.xx + k4.xx);
  out.xp = m.xp + dt / 6.0 * (k1.xp + 2 * k2.xp + 2 * k3.xp + k4.xp);
  out.pp = m.pp + dt / 6.0 * (k1.pp + 2 * k2.pp + 2 * k3.pp + k4.pp);
  out.t = m.t + dt;
  return out;
}

void check_step(double t_final, double dt) {
  if (!(dt > 0.0) || !(t_final >= 0.0)) throw std::invalid_argument("moment history: need dt > 0 and t_final >= 0");
}

template <typename Step>
std::vector<GaussianMoments> integrate(GaussianMoments m, double t_final, double dt, Step&& step) {
  check_step(t_final, dt);
  const long n = std::lround(std::ceil(t_final / dt - 1e-9));
  std::vector<GaussianMoments> out;
  out.reserve(std::size_t(n) + 1);
  out.push_back(m);
  for (long i = 1; i <= n; ++i) {
    const double t_next = std::min(t_final, i * dt);
    m = step(m, t_next - m.t);
    m.t = t_next;
    out.push_back(m);
  }
  return out;
}

}  // namespace

GaussianMoments minimum_uncertainty(double b, double hbar) { return {b * b, 0.0, hbar * hbar / (4.0 * b * b), 0.0}; }

GaussianMoments step_moments(const GaussianMoments& m, double dt, double lambda, double hbar, double mass) {
  return rk4(m, dt, [&](const GaussianMoments& s) {
    return Deriv{2.0 * s.xp / mass, s.pp / mass, 2.0 * lambda * hbar};
  });
}

std::vector<GaussianMoments> moment_history(double lambda, double b, double t_final, double dt, double hbar,
                                            double mass) {
  return integrate(minimum_uncertainty(b, hbar), t_final, dt,
                   [&](const GaussianMoments& m, double h) { return step_moments(m, h, lambda, hbar, mass); });
}

WidthHistory width_history(double lambda, double b, double t_final, double dt, double hbar, double mass) {
  const auto h = moment_history(lambda, b, t_final, dt, hbar, mass);
  std::vector<double> t, w;
  t.reserve(h.size());
  w.reserve(h.size());
  for (const auto& m : h) {
    t.push_back(m.t);
    w.push_back(std::sqrt(m.xx));
  }
  return WidthHistory(std::move(t), std::move(w));
}

double free_width_squared(double b, double t, double hbar, double mass) {
  const double s = hbar * t / (2.0 * mass * b);
  return b * b + s * s;
}

GaussianMoments jzme_moments_closed_form(double t, double lambda, double b, double hbar, double mass) {
  const GaussianMoments m0 = minimum_uncertainty(b, hbar);
  const double d = 2.0 * lambda * hbar;
  GaussianMoments m;
  m.pp = m0.pp + d * t;
  m.xp = m0.xp + (m0.pp * t + 0.5 * d * t * t) / mass;
  m.xx = m0.xx + 2.0 / mass * (m0.xp * t + (0.5 * m0.pp * t * t + d * t * t * t / 6.0) / mass);
  m.t = t;
  return m;
}

GaussianMoments step_logse_moments(const GaussianMoments& m, double dt, const CouplingSchedule& gamma, double hbar,
                                   double mass) {
  const double h2 = hbar * hbar;
  return rk4(m, dt, [&](const GaussianMoments& s) {
    const double g = gamma.value(s.t);
    return Deriv{2.0 * s.xp / mass, s.pp / mass + h2 * g / mass, 2.0 * h2 * g * s.xp / (mass * s.xx)};
  });
}

std::vector<GaussianMoments> logse_moment_history(const CouplingSchedule& gamma, double b, double t_final, double dt,
                                                  double hbar, double mass) {
  return integrate(minimum_uncertainty(b, hbar), t_final, dt, [&](const GaussianMoments& m, double h) {
    return step_logse_moments(m, h, gamma, hbar, mass);
  });
}

C0Calibration calibrate_c0_by_width(double lambda, double b, double t_window, double hbar, double mass, double c_lo,
                                    double c_hi) {
  if (!(t_window > 0.0) || !(c_hi > c_lo)) throw std::invalid_argument("calibrate_c0_by_width: bad window or bracket");
  const double t_b = characteristic_time(lambda, b, hbar);
  const double dt = 1e-3 * t_b;
  const auto ref = moment_history(lambda, b, t_window, dt, hbar, mass);
  auto cost = [&](double c0) {
    const auto s = logse_moment_history(CouplingSchedule::interp_linear(lambda, c0, t_b), b, t_window, dt, hbar, mass);
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double w_ref = std::sqrt(ref[i].xx);
      worst = std::max(worst, std::abs(std::sqrt(s[i].xx) - w_ref) / w_ref);
    }
    return worst;
  };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = c_lo, d = c_hi;
  double x1 = d - g * (d - a), x2 = a + g * (d - a);
  double f1 = cost(x1), f2 = cost(x2);
  while (d - a > 1e-6) {
    if (f1 < f2) {
      d = x2;
      x2 = x1;
      f2 = f1;
      x1 = d - g * (d - a);
      f1 = cost(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (d - a);
      f2 = cost(x2);
    }
  }
  const double c0 = 0.5 * (a + d);
  return {c0, cost(c0)};
}

void write_moments_csv(std::ostream& os, const std::vector<GaussianMoments>& history) {
  os << "t,w,xx,xp,pp\n" << std::setprecision(12);
  for (const auto& m : history) os << m.t << ',' << std::sqrt(m.xx) << ',' << m.xx << ',' << m.xp << ',' << m.pp << '\n';
}

}  // namespace logdec
