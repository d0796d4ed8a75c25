#pragma once

#include "homog/torus_grid.hpp"

#include <unsupported/Eigen/FFT>

#include <complex>
#include <vector>

namespace homog {

/// Exact inverse of the constant-coefficient periodic finite-volume Laplacian
/// (a == 1) on mean-zero fields, applied by d-dimensional DFT diagonalization.
/// The zero mode is annihilated, so the map is symmetric positive definite on
/// the mean-zero subspace; used as the CG preconditioner for variable
/// coefficients (spectral equivalence constant = the ellipticity contrast).
class ConstantCoefficientInverse {
 public:
  explicit ConstantCoefficientInverse(const TorusGrid& grid);

  /// out = F^{-1}[ F[r] / symbol ], zero mode -> 0.
  void apply(const Eigen::ArrayXd& r, Eigen::ArrayXd& out) const;

 private:
  void transform_axis(int axis, bool forward) const;

  TorusGrid grid_;
  Eigen::ArrayXd inv_symbol_;
  mutable Eigen::FFT<double> fft_;
  mutable std::vector<std::complex<double>> work_;
  mutable std::vector<std::complex<double>> line_in_, line_out_;
};

}  // namespace homog
