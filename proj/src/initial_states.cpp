#include "logdec/initial_states.hpp"

#include <cmath>
#include <iostream>

namespace logdec {

namespace {

void require_width(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("initial state: width b must be positive");
}

CVector twin_shape(const Grid1D& g, double b, double s, Parity parity) {
  require_width(b);
  if (!(s >= 0.0)) throw std::invalid_argument("twin_gaussian: separation s must be non-negative");
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  const double inv = 1.0 / (4.0 * b * b);
  CVector a(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double x = g.x[j];
    a[j] = std::exp(-(x - s) * (x - s) * inv) + sign * std::exp(-(x + s) * (x + s) * inv);
  }
  return a;
}

}  // namespace

WaveState normalized_state(const GridPtr& grid, CVector shape, double t) {
  if (!grid) throw std::invalid_argument("normalized_state: null grid");
  if (shape.size() != grid->N) throw std::invalid_argument("normalized_state: length mismatch");
  const double n = quadrature(shape.cwiseAbs2(), *grid);
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("normalized_state: shape has zero norm");
  shape /= std::sqrt(n);
  return WaveState{std::move(shape), t, grid};
}

WaveState gaussian(const GridPtr& grid, double b, double x0) {
  require_width(b);
  const Grid1D& g = *grid;
  CVector a(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double u = g.x[j] - x0;
    a[j] = std::exp(-u * u / (4.0 * b * b));
  }
  WaveState s = normalized_state(grid, std::move(a));
  if (boundary_contaminated(s)) {
    std::cerr << "warning: gaussian(b=" << b << ", x0=" << x0 << ") has edge intensity above 1e-12 on L=" << g.L
              << "; expect wrap-around\n";
  }
  return s;
}

WaveState lorentzian(const GridPtr& grid, double b) {
  require_width(b);
  const Grid1D& g = *grid;
  CVector a(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double u = g.x[j] / b;
    a[j] = 1.0 / (1.0 + u * u);
  }
  return normalized_state(grid, std::move(a));
}

WaveState sech(const GridPtr& grid, double b) {
  require_width(b);
  const Grid1D& g = *grid;
  CVector a(g.N);
  for (int j = 0; j < g.N; ++j) a[j] = 1.0 / std::cosh(g.x[j] / b);
  return normalized_state(grid, std::move(a));
}

WaveState twin_gaussian(const GridPtr& grid, double b, double s, Parity parity) {
  return normalized_state(grid, twin_shape(*grid, b, s, parity));
}

double twin_gaussian_normalization(const Grid1D& grid, double b, double s, Parity parity) {
  return quadrature(twin_shape(grid, b, s, parity).cwiseAbs2(), grid);
}

bool boundary_contaminated(const WaveState& state, double tol) {
  const auto& a = state.amplitudes;
  return std::norm(a[0]) > tol || std::norm(a[a.size() - 1]) > tol;
}

}  // namespace logdec
