#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logdec/initial_states.hpp"
#include "logdec/observables.hpp"

using namespace logdec;
using std::numbers::pi;

namespace {

double max_asymmetry(const WaveState& s) {
  // x_j and x_{N-j} are mirror images on the centred grid
  double worst = 0.0;
  const int n = s.grid->N;
  for (int j = 1; j < n; ++j) worst = std::max(worst, std::abs(s.amplitudes[j] - s.amplitudes[n - j]));
  return worst;
}

}  // namespace

TEST_CASE("gaussian width, centre and peak") {
  const GridPtr g = make_shared_grid(30.0, 2048);
  const WaveState a = gaussian(g, 1.0, 0.0);
  CHECK(std::abs(ensemble_width(a.intensity(), *g) - 1.0) <= 1e-3);
  CHECK(std::abs(a.norm() - 1.0) <= 1e-10);
  // |a|^2 = exp(-x^2/2) / sqrt(2 pi) after analytic normalization
  CHECK(std::norm(a.amplitudes[g->N / 2]) == doctest::Approx(1.0 / std::sqrt(2.0 * pi)).epsilon(1e-9));
  CHECK(std::norm(a.amplitudes[g->N / 2]) == doctest::Approx(0.3989).epsilon(1e-4));

  const WaveState shifted = gaussian(g, 1.0, 2.0);
  CHECK(std::abs(mean_position(shifted.intensity(), *g) - 2.0) <= 1e-6);
}

TEST_CASE("gaussian flags wrap-around contamination") {
  CHECK_FALSE(boundary_contaminated(gaussian(make_shared_grid(30.0, 2048), 1.0)));
  CHECK(boundary_contaminated(gaussian(make_shared_grid(10.0, 512), 1.0)));
  CHECK_THROWS_AS(gaussian(make_shared_grid(30.0, 64), 0.0), std::invalid_argument);
}

TEST_CASE("lorentzian shape and normalization") {
  // dx = 1/64 puts x = b = 1 on the grid
  const GridPtr g = make_shared_grid(32.0, 2048);
  const WaveState a = lorentzian(g, 1.0);
  const int j0 = g->N / 2, j1 = j0 + 64;
  REQUIRE(g->x[j1] == doctest::Approx(1.0));
  CHECK(std::norm(a.amplitudes[j1]) / std::norm(a.amplitudes[j0]) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(lorentzian(make_shared_grid(30.0, 2048), 1.0).norm() - 1.0) <= 1e-10);
  // heavy tails: the grid second moment exists only because the domain is finite
  const double w = ensemble_width(a.intensity(), *g);
  MESSAGE("Lorentzian b=1 grid width on L=32: " << w);
  CHECK(std::isfinite(w));
}

TEST_CASE("sech shape and normalization") {
  const GridPtr g = make_shared_grid(32.0, 2048);
  const WaveState a = sech(g, 1.0);
  const int j0 = g->N / 2, j1 = j0 + 64;
  CHECK(std::abs(a.amplitudes[j0]) / std::abs(a.amplitudes[j1]) == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
  CHECK(std::abs(a.norm() - 1.0) <= 1e-10);
  // int sech^2(x/b) dx = 2b, so the normalized peak intensity is 1/(2b)
  const WaveState a30 = sech(make_shared_grid(30.0, 2048), 1.0);
  CHECK(std::abs(std::norm(a30.amplitudes[1024]) - 0.5) <= 1e-8);
}

TEST_CASE("twin gaussian symmetry and degenerate merge") {
  const GridPtr g = make_shared_grid(30.0, 2048);
  const WaveState twin = twin_gaussian(g, 1.0, 1.0);
  CHECK(max_asymmetry(twin) <= 1e-12);
  CHECK((twin_gaussian(g, 1.0, 0.0).amplitudes - gaussian(g, 1.0).amplitudes).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_AS(twin_gaussian(g, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("twin gaussian normalization constant") {
  // closed form: two self-overlaps sqrt(2 pi) b each plus the cross term 2 sqrt(2 pi) b exp(-s^2 / 2b^2)
  const Grid1D g = make_grid(30.0, 2048);
  for (double s : {0.5, 1.0, 2.0}) {
    const double b = 1.0;
    const double closed = 2.0 * std::sqrt(2.0 * pi) * b * (1.0 + std::exp(-s * s / (2.0 * b * b)));
    CHECK(std::abs(twin_gaussian_normalization(g, b, s) - closed) <= 1e-6);
  }
  CHECK(twin_gaussian_normalization(g, 1.0, 1.0) == doctest::Approx(8.05395).epsilon(1e-6));
}

TEST_CASE("odd twin gaussian carries a zero at the origin") {
  const GridPtr g = make_shared_grid(30.0, 2048);
  const WaveState odd = twin_gaussian(g, 1.0, 1.0, Parity::odd);
  CHECK(std::abs(odd.amplitudes[g->N / 2]) == 0.0);
  CHECK(std::abs(odd.norm() - 1.0) <= 1e-10);
  for (int j = 1; j < g->N; ++j) CHECK(std::abs(odd.amplitudes[j] + odd.amplitudes[g->N - j]) <= 1e-12);
}

TEST_CASE("every constructor yields unit norm and symmetric states are even") {
  const GridPtr g = make_shared_grid(30.0, 1024);
  for (const WaveState& s : {gaussian(g, 1.0), lorentzian(g, 1.0), sech(g, 1.0), twin_gaussian(g, 1.0, 1.0),
                             gaussian(g, 0.7), sech(g, 2.0)}) {
    CHECK(std::abs(s.norm() - 1.0) <= 1e-10);
    CHECK(max_asymmetry(s) <= 1e-12);
  }
}
