#pragma once

#include <ostream>
#include <vector>

#include "logdec/coupling_schedule.hpp"

namespace logdec {

// Second moments of a centred Gaussian state. xp is the symmetrized <xp + px>/2.
struct GaussianMoments {
  double xx = 1.0;
  double xp = 0.0;
  double pp = 0.25;
  double t = 0.0;

  double uncertainty() const { return xx * pp - xp * xp; }
};

GaussianMoments minimum_uncertainty(double b, double hbar = 1.0);

// One RK4 step of  xx' = 2 xp / m,  xp' = pp / m,  pp' = 2 lambda hbar.
GaussianMoments step_moments(const GaussianMoments& m, double dt, double lambda, double hbar, double mass);

std::vector<GaussianMoments> moment_history(double lambda, double b, double t_final, double dt, double hbar = 1.0,
                                            double mass = 1.0);

// w(t) = sqrt(xx(t)) sampled every dt on [0, t_final].
WidthHistory width_history(double lambda, double b, double t_final, double dt, double hbar = 1.0, double mass = 1.0);

// b^2 + (hbar t / 2 m b)^2
double free_width_squared(double b, double t, double hbar = 1.0, double mass = 1.0);

// Closed form of the Lambda > 0 chain from a minimum-uncertainty start.
GaussianMoments jzme_moments_closed_form(double t, double lambda, double b, double hbar = 1.0, double mass = 1.0);

// Gaussian moments under the LogSE with coupling gamma(t):
//   xx' = 2 xp / m,  xp' = pp / m + hbar^2 gamma / m,  pp' = 2 hbar^2 gamma xp / (m xx).
GaussianMoments step_logse_moments(const GaussianMoments& m, double dt, const CouplingSchedule& gamma, double hbar,
                                   double mass);
std::vector<GaussianMoments> logse_moment_history(const CouplingSchedule& gamma, double b, double t_final, double dt,
                                                  double hbar = 1.0, double mass = 1.0);

// c0 minimizing max_t |w_logse - w_jzme| / w_jzme over [0, t_window] for the
// interpolated schedule, located by golden-section search on [c_lo, c_hi].
struct C0Calibration {
  double c0;
  double max_rel_width_error;
};
C0Calibration calibrate_c0_by_width(double lambda, double b, double t_window, double hbar = 1.0, double mass = 1.0,
                                    double c_lo = -1.0, double c_hi = 2.0);

void write_moments_csv(std::ostream& os, const std::vector<GaussianMoments>& history);

}  // namespace logdec
