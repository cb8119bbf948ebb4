#pragma once

#include "logdec/initial_states.hpp"

namespace logdec {

// rho(x_j, x'_l) stored as rho(j, l) on a shared grid.
struct DensityState {
  CMatrix rho;
  double t = 0.0;
  GridPtr grid;

  double trace() const { return rho.diagonal().real().sum() * grid->dx; }
  RVector diagonal() const { return rho.diagonal().real(); }
  // tr(rho^2) with dx^2 weights
  double purity() const { return rho.cwiseAbs2().sum() * grid->dx * grid->dx; }
  double hermiticity_error() const;
};

// rho_M(x, x') = a(x) conj(a(x'))
DensityState from_wavefunction(const WaveState& a);

}  // namespace logdec
