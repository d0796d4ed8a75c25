#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace homog {

using Point = Eigen::Vector3d;           // components >= dim are zero
using MultiIndex = std::array<int, 3>;   // cell coordinates, components >= dim are zero

/// Periodic cell-centered lattice on [-L/2, L/2)^d.
///
/// Cells are ordered lexicographically in their multi-index (axis 0 slowest,
/// axis d-1 fastest); unused axes have extent 1 so every grid can be walked
/// as a 3D box.
struct TorusGrid {
  int dim = 0;             // d in {1,2,3}
  double side = 0.0;       // L
  int cells_per_unit = 0;  // n
  int m = 0;               // cells per side, m = round(L*n)
  double h = 0.0;          // cell size, L/m

  static constexpr std::size_t kDefaultMemoryBudget = std::size_t{4} << 30;

  /// Validates d in {1,2,3}, L > 0, L*n integral, and the m^d*(d+2) value
  /// memory estimate against the budget. Throws std::invalid_argument.
  static TorusGrid create(int dim, double side, int cells_per_unit,
                          std::size_t memory_budget_bytes = kDefaultMemoryBudget);

  std::int64_t cell_count() const;
  std::int64_t face_count() const { return dim * cell_count(); }
  double cell_volume() const;  // h^d
  double volume() const;       // L^d

  int extent(int axis) const { return axis < dim ? m : 1; }
  std::int64_t stride(int axis) const;

  std::int64_t cell_index(const MultiIndex& c) const;
  MultiIndex cell_coords(std::int64_t idx) const;
  Point cell_center(std::int64_t idx) const;
  Point cell_center(const MultiIndex& c) const;

  int wrap_coord(int i) const { return ((i % m) + m) % m; }
  /// Neighboring cell index along an axis, step in {-1,+1}, periodic wrap.
  std::int64_t neighbor(std::int64_t idx, int axis, int step) const;

  /// Wraps a coordinate into the fundamental domain [-L/2, L/2).
  double wrap_position(double x) const;
  Point wrap_point(const Point& x) const;
  /// Cell containing a point of the fundamental domain.
  std::int64_t cell_containing(const Point& x) const;

  /// Face (axis, cell) -> linear face index; face (k,c) sits between cell c
  /// and its +1 neighbor along axis k.
  std::int64_t face_index(int axis, std::int64_t cell_idx) const {
    return static_cast<std::int64_t>(axis) * cell_count() + cell_idx;
  }

  bool same_layout(const TorusGrid& other) const {
    return dim == other.dim && m == other.m && side == other.side &&
           cells_per_unit == other.cells_per_unit;
  }
};

/// Torus metric: sqrt(sum_i min(|x_i-y_i|, L-|x_i-y_i|)^2). Inputs are wrapped
/// into the fundamental domain first.
double torus_distance(const Point& x, const Point& y, double side, int dim);

/// Wraps a coordinate into [-side/2, side/2).
double wrap_position(double x, double side);
Point wrap_point(const Point& x, double side, int dim);

/// Cell values on a TorusGrid, one double per cell in lexicographic order.
struct ScalarField {
  TorusGrid grid;
  Eigen::ArrayXd values;

  static ScalarField zero(const TorusGrid& grid);
  static ScalarField constant(const TorusGrid& grid, double value);
  bool all_finite() const { return values.allFinite(); }
};

/// Face values, one double per (axis, cell) pair; entry face_index(k,c) is the
/// value on the face between cell c and c + e_k.
struct FaceField {
  TorusGrid grid;
  Eigen::ArrayXd values;

  static FaceField zero(const TorusGrid& grid);
  static FaceField constant(const TorusGrid& grid, double value);
  double operator()(int axis, std::int64_t cell_idx) const {
    return values[grid.face_index(axis, cell_idx)];
  }
};

/// f shifted by z cells: output(c) = input(c + z mod m), matching a(.+z).
ScalarField shift_field(const ScalarField& f, const MultiIndex& z);

/// Arithmetic mean of cell values = h^d * sum / L^d.
double mean(const ScalarField& f);

/// All cells whose centers lie strictly within `radius` of `center` in the
/// torus metric, sorted by cell index. Rejects radius outside (0, L/2].
std::vector<std::int64_t> ball_cells(const TorusGrid& grid, const Point& center,
                                     double radius);

/// Same filter without the metric-ball radius cap; used for enlarged
/// influence regions B_{R+1} that may exceed L/2.
std::vector<std::int64_t> cells_within(const TorusGrid& grid, const Point& center,
                                       double radius);

}  // namespace homog
