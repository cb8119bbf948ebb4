#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>

#include <Eigen/Dense>

namespace logdec {

using Complex = std::complex<double>;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Periodic grid on [-L/2, L/2) and its wavenumbers in standard DFT ordering.
struct Grid1D {
  double L = 0.0;
  int N = 0;
  double dx = 0.0;
  RVector x;
  RVector k;

  double x_min() const { return -0.5 * L; }
};

using GridPtr = std::shared_ptr<const Grid1D>;

// Throws std::invalid_argument for odd N, N < 8 or L <= 0.
Grid1D make_grid(double L, int N);
GridPtr make_shared_grid(double L, int N);

// Rectangle rule, sum_j f_j dx. Works on any 1-D Eigen expression.
template <typename Derived>
typename Derived::Scalar quadrature(const Eigen::DenseBase<Derived>& f, const Grid1D& grid) {
  if (f.size() != grid.N) {
    throw std::invalid_argument("quadrature: sample count does not match grid");
  }
  return f.sum() * typename Derived::Scalar(grid.dx);
}

// Owns a pair of FFTW plans for one transform size. Forward is unnormalized,
// inverse carries the 1/N (or 1/N^2) factor. Plan creation is serialized
// internally; execution on distinct buffers is safe from several threads.
class Fft1D {
 public:
  explicit Fft1D(int n);
  ~Fft1D();
  Fft1D(const Fft1D&) = delete;
  Fft1D& operator=(const Fft1D&) = delete;

  int size() const { return n_; }
  void forward(Complex* data) const;
  void inverse(Complex* data) const;

 private:
  int n_;
  void* forward_plan_;
  void* inverse_plan_;
  void* forward_unaligned_;
  void* inverse_unaligned_;
  int plan_alignment_;
};

class Fft2D {
 public:
  explicit Fft2D(int n);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  int size() const { return n_; }
  // In-place transform of an n x n block (storage order irrelevant).
  void forward(Complex* data) const;
  void inverse(Complex* data) const;

 private:
  int n_;
  void* forward_plan_;
  void* inverse_plan_;
  void* forward_unaligned_;
  void* inverse_unaligned_;
  int plan_alignment_;
};

CVector dft_forward(const CVector& f);
CVector dft_inverse(const CVector& f_hat);
CMatrix dft2_forward(const CMatrix& f);
CMatrix dft2_inverse(const CMatrix& f_hat);

// n-th spectral derivative through the differentiation theorem.
CVector spectral_derivative(const CVector& f, const Grid1D& grid, int order = 1);

}  // namespace logdec
