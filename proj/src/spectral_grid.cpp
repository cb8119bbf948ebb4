#include "logdec/spectral_grid.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace logdec {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

struct PlanSet {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  fftw_plan forward_unaligned = nullptr;
  fftw_plan inverse_unaligned = nullptr;
  int alignment = 0;
};

// rank 1 or 2 square transform of side n
PlanSet make_plans(int rank, int n) {
  std::lock_guard lock(planner_mutex());
  const std::size_t total = rank == 1 ? std::size_t(n) : std::size_t(n) * std::size_t(n);
  auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  if (scratch == nullptr) throw std::bad_alloc();
  const int dims[2] = {n, n};
  const unsigned flags = FFTW_ESTIMATE;
  PlanSet s;
  s.forward = fftw_plan_dft(rank, dims, scratch, scratch, FFTW_FORWARD, flags);
  s.inverse = fftw_plan_dft(rank, dims, scratch, scratch, FFTW_BACKWARD, flags);
  s.forward_unaligned = fftw_plan_dft(rank, dims, scratch, scratch, FFTW_FORWARD, flags | FFTW_UNALIGNED);
  s.inverse_unaligned = fftw_plan_dft(rank, dims, scratch, scratch, FFTW_BACKWARD, flags | FFTW_UNALIGNED);
  s.alignment = fftw_alignment_of(reinterpret_cast<double*>(scratch));
  fftw_free(scratch);
  if (!s.forward || !s.inverse || !s.forward_unaligned || !s.inverse_unaligned) {
    throw std::runtime_error("FFTW planner failed");
  }
  return s;
}

void destroy_plans(void* a, void* b, void* c, void* d) {
  std::lock_guard lock(planner_mutex());
  for (void* p : {a, b, c, d}) {
    if (p != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(p));
  }
}

void execute(void* aligned, void* unaligned, int alignment, Complex* data) {
  const bool same = fftw_alignment_of(reinterpret_cast<double*>(data)) == alignment;
  fftw_plan p = static_cast<fftw_plan>(same ? aligned : unaligned);
  fftw_execute_dft(p, as_fftw(data), as_fftw(data));
}

}  // namespace

Grid1D make_grid(double L, int N) {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("make_grid: L must be positive");
  if (N < 8) throw std::invalid_argument("make_grid: N must be at least 8");
  if (N % 2 != 0) throw std::invalid_argument("make_grid: N must be even");

  Grid1D g;
  g.L = L;
  g.N = N;
  g.dx = L / N;
  g.x.resize(N);
  g.k.resize(N);
  const double dk = 2.0 * std::numbers::pi / L;
  for (int j = 0; j < N; ++j) {
    g.x[j] = -0.5 * L + j * g.dx;
    const int m = j < N / 2 ? j : j - N;
    g.k[j] = dk * m;
  }
  return g;
}

GridPtr make_shared_grid(double L, int N) { return std::make_shared<const Grid1D>(make_grid(L, N)); }

Fft1D::Fft1D(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("Fft1D: size must be positive");
  PlanSet s = make_plans(1, n);
  forward_plan_ = s.forward;
  inverse_plan_ = s.inverse;
  forward_unaligned_ = s.forward_unaligned;
  inverse_unaligned_ = s.inverse_unaligned;
  plan_alignment_ = s.alignment;
}

Fft1D::~Fft1D() { destroy_plans(forward_plan_, inverse_plan_, forward_unaligned_, inverse_unaligned_); }

void Fft1D::forward(Complex* data) const { execute(forward_plan_, forward_unaligned_, plan_alignment_, data); }

void Fft1D::inverse(Complex* data) const {
  execute(inverse_plan_, inverse_unaligned_, plan_alignment_, data);
  const double scale = 1.0 / n_;
  for (int j = 0; j < n_; ++j) data[j] *= scale;
}

Fft2D::Fft2D(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("Fft2D: size must be positive");
  PlanSet s = make_plans(2, n);
  forward_plan_ = s.forward;
  inverse_plan_ = s.inverse;
  forward_unaligned_ = s.forward_unaligned;
  inverse_unaligned_ = s.inverse_unaligned;
  plan_alignment_ = s.alignment;
}

Fft2D::~Fft2D() { destroy_plans(forward_plan_, inverse_plan_, forward_unaligned_, inverse_unaligned_); }

void Fft2D::forward(Complex* data) const { execute(forward_plan_, forward_unaligned_, plan_alignment_, data); }

void Fft2D::inverse(Complex* data) const {
  execute(inverse_plan_, inverse_unaligned_, plan_alignment_, data);
  const double scale = 1.0 / (double(n_) * double(n_));
  const std::size_t total = std::size_t(n_) * std::size_t(n_);
  for (std::size_t j = 0; j < total; ++j) data[j] *= scale;
}

CVector dft_forward(const CVector& f) {
  CVector out = f;
  Fft1D(static_cast<int>(f.size())).forward(out.data());
  return out;
}

CVector dft_inverse(const CVector& f_hat) {
  CVector out = f_hat;
  Fft1D(static_cast<int>(f_hat.size())).inverse(out.data());
  return out;
}

CMatrix dft2_forward(const CMatrix& f) {
  if (f.rows() != f.cols()) throw std::invalid_argument("dft2_forward: matrix must be square");
  CMatrix out = f;
  Fft2D(static_cast<int>(f.rows())).forward(out.data());
  return out;
}

CMatrix dft2_inverse(const CMatrix& f_hat) {
  if (f_hat.rows() != f_hat.cols()) throw std::invalid_argument("dft2_inverse: matrix must be square");
  CMatrix out = f_hat;
  Fft2D(static_cast<int>(f_hat.rows())).inverse(out.data());
  return out;
}

CVector spectral_derivative(const CVector& f, const Grid1D& grid, int order) {
  if (f.size() != grid.N) throw std::invalid_argument("spectral_derivative: length mismatch");
  if (order < 0) throw std::invalid_argument("spectral_derivative: negative order");
  CVector spec = dft_forward(f);
  for (int j = 0; j < grid.N; ++j) {
    spec[j] *= std::pow(Complex(0.0, grid.k[j]), order);
  }
  return dft_inverse(spec);
}

}  // namespace logdec
