#include "homog/fft_poisson.hpp"

#include <cmath>
#include <numbers>

namespace homog {

ConstantCoefficientInverse::ConstantCoefficientInverse(const TorusGrid& grid)
    : grid_(grid) {
  const std::int64_t n = grid.cell_count();
  inv_symbol_.resize(n);
  const double scale = 4.0 / (grid.h * grid.h);
  for (std::int64_t idx = 0; idx < n; ++idx) {
    const MultiIndex mode = grid.cell_coords(idx);
    double symbol = 0.0;
    for (int k = 0; k < grid.dim; ++k) {
      const double s = std::sin(std::numbers::pi * mode[k] / grid.m);
      symbol += scale * s * s;
    }
    inv_symbol_[idx] = symbol > 0.0 ? 1.0 / symbol : 0.0;
  }
  work_.resize(n);
  line_in_.resize(grid.m);
  line_out_.resize(grid.m);
}

void ConstantCoefficientInverse::transform_axis(int axis, bool forward) const {
  const std::int64_t stride = grid_.stride(axis);
  const int m = grid_.m;
  // Lines along `axis` start at every cell whose coordinate on that axis is 0.
  const int oa = axis == 0 ? 1 : 0;
  const int ob = axis == 2 ? 1 : 2;
  const std::int64_t stride_a = grid_.stride(oa);
  const std::int64_t stride_b = grid_.stride(ob);
  for (int a = 0; a < grid_.extent(oa); ++a) {
    for (int b = 0; b < grid_.extent(ob); ++b) {
      const std::int64_t start = a * stride_a + b * stride_b;
      for (int j = 0; j < m; ++j) line_in_[j] = work_[start + j * stride];
      if (forward) {
        fft_.fwd(line_out_, line_in_);
      } else {
        fft_.inv(line_out_, line_in_);
      }
      for (int j = 0; j < m; ++j) work_[start + j * stride] = line_out_[j];
    }
  }
}

void ConstantCoefficientInverse::apply(const Eigen::ArrayXd& r, Eigen::ArrayXd& out) const {
  const std::int64_t n = grid_.cell_count();
  for (std::int64_t i = 0; i < n; ++i) work_[i] = r[i];
  for (int axis = 0; axis < grid_.dim; ++axis) transform_axis(axis, true);
  for (std::int64_t i = 0; i < n; ++i) work_[i] *= inv_symbol_[i];
  for (int axis = 0; axis < grid_.dim; ++axis) transform_axis(axis, false);
  out.resize(n);
  for (std::int64_t i = 0; i < n; ++i) out[i] = work_[i].real();
}

}  // namespace homog
