#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "logdec/density_state.hpp"

namespace logdec {

struct ObservableRecord {
  double t = 0.0;
  double width = 0.0;
  std::optional<double> coherence_length;
  double norm = 0.0;
  double kinetic_energy = 0.0;
  std::optional<double> visibility;
  std::vector<double> zeros;
  std::optional<double> rel_l2_error;
  std::optional<double> hermiticity_error;
};

struct ObservableSeries {
  std::vector<ObservableRecord> records;
  std::optional<double> t_breakdown;

  // Throws if t does not increase strictly.
  void append(ObservableRecord r);
  bool empty() const { return records.empty(); }
  std::vector<double> times() const;
  std::vector<double> widths() const;
};

// Header: t,width,coherence_length,norm,kinetic_energy,visibility,rel_l2_error
void write_series_csv(std::ostream& os, const ObservableSeries& s);

// Standard deviation of x under p / quadrature(p).
template <typename Derived>
double ensemble_width(const Eigen::DenseBase<Derived>& p, const Grid1D& grid) {
  if (p.size() != grid.N) throw std::invalid_argument("ensemble_width: length mismatch");
  const auto pa = p.derived().array().template cast<double>();
  const double mass = pa.sum();
  if (!(mass > 0.0)) throw std::invalid_argument("ensemble_width: all-zero distribution");
  const double mean = (pa * grid.x.array()).sum() / mass;
  const double var = (pa * (grid.x.array() - mean).square()).sum() / mass;
  return std::sqrt(std::max(var, 0.0));
}

double mean_position(const RVector& p, const Grid1D& grid);

// Standard deviation of y = x - x' under the weight sum_{j - l = m} |rho(j, l)|.
double coherence_length(const DensityState& rho);

double kinetic_energy(const WaveState& a, double hbar = 1.0, double mass = 1.0);
double kinetic_energy(const DensityState& rho, double hbar = 1.0, double mass = 1.0);

// (p_max - p_min) / (p_max + p_min) for the adjacent max/min pair inside
// [x_lo, x_hi] around the largest local maximum. Empty if no such pair exists.
std::optional<double> fringe_visibility(const RVector& p, const Grid1D& grid, double x_lo, double x_hi);

// Local minima of |a|^2 below tol, refined by a parabola through three points.
// Neighbours wrap periodically. A minimum counts only if |a|^2 climbs back to
// floor_rel * max|a|^2 within 16 cells on both sides, which rejects decayed tails
// and the far side of a localized packet.
std::vector<double> find_zeros(const RVector& intensity, const Grid1D& grid, double tol = 1e-10,
                               double floor_rel = 1e-6);
std::vector<double> find_zeros(const WaveState& a, double tol = 1e-10, double floor_rel = 1e-6);

// ||f - g|| / sqrt(||f|| ||g||) for samples on a uniform grid (the dx weights cancel).
template <typename DerivedF, typename DerivedG>
double rel_l2_distance(const Eigen::MatrixBase<DerivedF>& f, const Eigen::MatrixBase<DerivedG>& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) throw std::invalid_argument("rel_l2_distance: shape mismatch");
  const double nf = f.norm();
  const double ng = g.norm();
  if (!(nf > 0.0) || !(ng > 0.0)) throw std::domain_error("rel_l2_distance: zero-norm input");
  return (f - g).norm() / std::sqrt(nf * ng);
}

// Err(rho_S, a a^*) with the 2-D L2 norm.
double rel_l2_error(const DensityState& rho, const WaveState& a);
// Err(diag rho_S, |a|^2) with the 1-D L2 norm.
double rel_l2_error_diagonal(const DensityState& rho, const WaveState& a);

}  // namespace logdec
