#include "homog/torus_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace homog {

TorusGrid TorusGrid::create(int dim, double side, int cells_per_unit,
                            std::size_t memory_budget_bytes) {
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument("TorusGrid: dimension must be 1, 2, or 3, got " +
                                std::to_string(dim));
  }
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw std::invalid_argument("TorusGrid: side length must be positive");
  }
  if (cells_per_unit < 1) {
    throw std::invalid_argument("TorusGrid: cells_per_unit must be positive");
  }
  const double ln = side * cells_per_unit;
  const double rounded = std::round(ln);
  if (std::abs(ln - rounded) > 1e-9 * std::max(1.0, std::abs(ln)) || rounded < 1.0) {
    throw std::invalid_argument(
        "TorusGrid: L*n must be a positive integer (unit-ball radius must be "
        "commensurate with the grid); got L*n = " +
        std::to_string(ln));
  }
  TorusGrid g;
  g.dim = dim;
  g.side = side;
  g.cells_per_unit = cells_per_unit;
  g.m = static_cast<int>(rounded);
  g.h = side / g.m;

  double cells = 1.0;
  for (int k = 0; k < dim; ++k) cells *= g.m;
  const double estimate_bytes = cells * (dim + 2) * sizeof(double);
  if (estimate_bytes > static_cast<double>(memory_budget_bytes)) {
    throw std::invalid_argument("TorusGrid: m^d*(d+2) value estimate (" +
                                std::to_string(estimate_bytes) +
                                " bytes) exceeds the memory budget");
  }
  return g;
}

std::int64_t TorusGrid::cell_count() const {
  std::int64_t c = 1;
  for (int k = 0; k < dim; ++k) c *= m;
  return c;
}

double TorusGrid::cell_volume() const {
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= h;
  return v;
}

double TorusGrid::volume() const {
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= side;
  return v;
}

std::int64_t TorusGrid::stride(int axis) const {
  std::int64_t s = 1;
  for (int k = axis + 1; k < 3; ++k) s *= extent(k);
  return s;
}

std::int64_t TorusGrid::cell_index(const MultiIndex& c) const {
  std::int64_t idx = 0;
  for (int k = 0; k < 3; ++k) idx = idx * extent(k) + c[k];
  return idx;
}

MultiIndex TorusGrid::cell_coords(std::int64_t idx) const {
  MultiIndex c{0, 0, 0};
  for (int k = 2; k >= 0; --k) {
    c[k] = static_cast<int>(idx % extent(k));
    idx /= extent(k);
  }
  return c;
}

Point TorusGrid::cell_center(const MultiIndex& c) const {
  Point x = Point::Zero();
  for (int k = 0; k < dim; ++k) x[k] = -0.5 * side + (c[k] + 0.5) * h;
  return x;
}

Point TorusGrid::cell_center(std::int64_t idx) const {
  return cell_center(cell_coords(idx));
}

std::int64_t TorusGrid::neighbor(std::int64_t idx, int axis, int step) const {
  MultiIndex c = cell_coords(idx);
  c[axis] = wrap_coord(c[axis] + step);
  return cell_index(c);
}

double wrap_position(double x, double side) {
  double y = std::fmod(x + 0.5 * side, side);
  if (y < 0.0) y += side;
  y -= 0.5 * side;
  return y < 0.5 * side ? y : -0.5 * side;  // guard fmod landing on side
}

Point wrap_point(const Point& x, double side, int dim) {
  Point y = Point::Zero();
  for (int k = 0; k < dim; ++k) y[k] = wrap_position(x[k], side);
  return y;
}

double TorusGrid::wrap_position(double x) const { return homog::wrap_position(x, side); }

Point TorusGrid::wrap_point(const Point& x) const {
  return homog::wrap_point(x, side, dim);
}

std::int64_t TorusGrid::cell_containing(const Point& x) const {
  MultiIndex c{0, 0, 0};
  for (int k = 0; k < dim; ++k) {
    const double t = (wrap_position(x[k]) + 0.5 * side) / h;
    c[k] = std::min(m - 1, std::max(0, static_cast<int>(std::floor(t))));
  }
  return cell_index(c);
}

double torus_distance(const Point& x, const Point& y, double side, int dim) {
  double sq = 0.0;
  for (int k = 0; k < dim; ++k) {
    double d = std::abs(x[k] - y[k]);
    d = std::fmod(d, side);
    d = std::min(d, side - d);
    sq += d * d;
  }
  return std::sqrt(sq);
}

ScalarField ScalarField::zero(const TorusGrid& grid) {
  return ScalarField{grid, Eigen::ArrayXd::Zero(grid.cell_count())};
}

ScalarField ScalarField::constant(const TorusGrid& grid, double value) {
  return ScalarField{grid, Eigen::ArrayXd::Constant(grid.cell_count(), value)};
}

FaceField FaceField::zero(const TorusGrid& grid) {
  return FaceField{grid, Eigen::ArrayXd::Zero(grid.face_count())};
}

FaceField FaceField::constant(const TorusGrid& grid, double value) {
  return FaceField{grid, Eigen::ArrayXd::Constant(grid.face_count(), value)};
}

ScalarField shift_field(const ScalarField& f, const MultiIndex& z) {
  const TorusGrid& g = f.grid;
  ScalarField out = ScalarField::zero(g);
  MultiIndex c{0, 0, 0};
  std::int64_t idx = 0;
  for (c[0] = 0; c[0] < g.extent(0); ++c[0])
    for (c[1] = 0; c[1] < g.extent(1); ++c[1])
      for (c[2] = 0; c[2] < g.extent(2); ++c[2], ++idx) {
        MultiIndex s = c;
        for (int k = 0; k < g.dim; ++k) s[k] = g.wrap_coord(c[k] + z[k]);
        out.values[idx] = f.values[g.cell_index(s)];
      }
  return out;
}

double mean(const ScalarField& f) { return f.values.mean(); }

std::vector<std::int64_t> cells_within(const TorusGrid& grid, const Point& center,
                                       double radius) {
  const Point c = grid.wrap_point(center);
  std::vector<std::int64_t> out;
  const std::int64_t n = grid.cell_count();
  for (std::int64_t idx = 0; idx < n; ++idx) {
    if (torus_distance(grid.cell_center(idx), c, grid.side, grid.dim) < radius) {
      out.push_back(idx);
    }
  }
  return out;
}

std::vector<std::int64_t> ball_cells(const TorusGrid& grid, const Point& center,
                                     double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("ball_cells: radius must be positive");
  }
  if (radius > 0.5 * grid.side) {
    throw std::invalid_argument(
        "ball_cells: radius exceeds L/2, no longer a metric ball on the torus");
  }
  return cells_within(grid, center, radius);
}

}  // namespace homog
