#pragma once

#include "homog/torus_grid.hpp"

namespace homog {

/// Ellipticity contrast of the two-phase medium: values lie in {lambda, 1},
/// 0 < lambda <= 1.
struct EllipticityParams {
  double lambda = 0.25;

  static EllipticityParams create(double lambda);
};

template <class Scalar>
Scalar harmonic_mean(Scalar x, Scalar y) {
  if (x == Scalar(0) || y == Scalar(0)) return Scalar(0);
  return (Scalar(2) * x * y) / (x + y);
}

/// Scalar conductivity field: cell-center samples plus face values obtained
/// by harmonic averaging of the two adjacent cells. Face values drive the
/// conservative flux discretization; harmonic averaging makes the 1D
/// laminate effective coefficient exactly the harmonic mean of the profile.
struct CoefficientField {
  TorusGrid grid;
  ScalarField cell_values;
  FaceField face_values;

  static CoefficientField from_cell_values(ScalarField cells);
  static CoefficientField constant(const TorusGrid& grid, double value);
  /// Half/half two-phase laminate varying along `axis`: cells with coordinate
  /// below m/2 get `low`, the rest `high`.
  static CoefficientField laminate(const TorusGrid& grid, int axis, double low,
                                   double high);

  double min_cell_value() const { return cell_values.values.minCoeff(); }
  double max_cell_value() const { return cell_values.values.maxCoeff(); }
};

/// Pointwise transpose. The fields here are scalar multiples of the identity,
/// so this is the identity map (bit-exact copy); kept as the named operation
/// entering the adjoint corrector.
CoefficientField transpose_field(const CoefficientField& a);

/// Integer-cell shift of the whole field (cells shifted, faces re-derived;
/// equivalent to shifting both).
CoefficientField shift_coefficient_field(const CoefficientField& a, const MultiIndex& z);

}  // namespace homog
