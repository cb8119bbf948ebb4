#pragma once

#include "logdec/spectral_grid.hpp"

namespace logdec {

// Marginal wavefunction a(x, t) sampled on a grid.
struct WaveState {
  CVector amplitudes;
  double t = 0.0;
  GridPtr grid;

  RVector intensity() const { return amplitudes.cwiseAbs2(); }
  double norm() const { return quadrature(amplitudes.cwiseAbs2(), *grid); }
};

enum class Parity { even, odd };

// Sample a shape on the grid and rescale so that quadrature(|a|^2) == 1.
WaveState normalized_state(const GridPtr& grid, CVector shape, double t = 0.0);

// exp(-(x - x0)^2 / 4b^2); |a|^2 has standard deviation b.
WaveState gaussian(const GridPtr& grid, double b, double x0 = 0.0);
// 1 / (1 + (x/b)^2), b is half the FWHM of the amplitude.
WaveState lorentzian(const GridPtr& grid, double b);
// sech(x/b)
WaveState sech(const GridPtr& grid, double b);
// exp(-(x-s)^2/4b^2) +/- exp(-(x+s)^2/4b^2). The odd combination carries a
// zero at x = 0 from t = 0 on.
WaveState twin_gaussian(const GridPtr& grid, double b, double s, Parity parity = Parity::even);

// Grid value of the twin-Gaussian normalization integral N(b, s) of the unnormalized shape.
double twin_gaussian_normalization(const Grid1D& grid, double b, double s, Parity parity = Parity::even);

// True when the edge intensity exceeds tol (wrap-around contamination).
bool boundary_contaminated(const WaveState& state, double tol = 1e-12);

}  // namespace logdec
