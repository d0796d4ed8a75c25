#include "homog/coefficient_field.hpp"

#include <stdexcept>

namespace homog {

EllipticityParams EllipticityParams::create(double lambda) {
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw std::invalid_argument("EllipticityParams: lambda must be in (0, 1]");
  }
  return EllipticityParams{lambda};
}

CoefficientField CoefficientField::from_cell_values(ScalarField cells) {
  const TorusGrid g = cells.grid;
  FaceField faces = FaceField::zero(g);
  const std::int64_t n = g.cell_count();
  for (int axis = 0; axis < g.dim; ++axis) {
    for (std::int64_t c = 0; c < n; ++c) {
      const std::int64_t nb = g.neighbor(c, axis, +1);
      faces.values[g.face_index(axis, c)] =
          harmonic_mean(cells.values[c], cells.values[nb]);
    }
  }
  return CoefficientField{g, std::move(cells), std::move(faces)};
}

CoefficientField CoefficientField::constant(const TorusGrid& grid, double value) {
  return from_cell_values(ScalarField::constant(grid, value));
}

CoefficientField CoefficientField::laminate(const TorusGrid& grid, int axis,
                                            double low, double high) {
  if (axis < 0 || axis >= grid.dim) {
    throw std::invalid_argument("laminate: axis out of range");
  }
  ScalarField cells = ScalarField::zero(grid);
  const std::int64_t n = grid.cell_count();
  for (std::int64_t c = 0; c < n; ++c) {
    cells.values[c] = grid.cell_coords(c)[axis] < grid.m / 2 ? low : high;
  }
  return from_cell_values(std::move(cells));
}

CoefficientField transpose_field(const CoefficientField& a) { return a; }

CoefficientField shift_coefficient_field(const CoefficientField& a, const MultiIndex& z) {
  return CoefficientField::from_cell_values(shift_field(a.cell_values, z));
}

}  // namespace homog
