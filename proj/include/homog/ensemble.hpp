#pragma once

#include "homog/coefficient_field.hpp"
#include "homog/rng.hpp"
#include "homog/torus_grid.hpp"

#include <vector>

namespace homog {

/// One realization of the point process on the torus; the point count is
/// itself random and may be zero.
struct PointConfiguration {
  int dim = 0;
  double side = 0.0;
  RngStream seed;  // stream that produced this realization (metadata)
  std::vector<Point> points;
};

/// Poisson point process with density one: N ~ Poisson(L^d), positions i.i.d.
/// uniform on [-L/2, L/2)^d. Restrictions to disjoint regions are independent.
PointConfiguration sample_points(double side, int dim, const RngStream& rng);

/// Unit balls of conductivity `lambda` around the points, background 1
/// (union semantics), sampled at cell centers; faces by harmonic averaging.
CoefficientField rasterize_coefficient(const PointConfiguration& config,
                                       const TorusGrid& grid, double lambda);

/// Conditional resampling: keeps points outside B_R(center) exactly, replaces
/// the inside with a fresh Poisson(vol(B_R intersect torus-ball)) draw of
/// uniform points in the ball. Valid by spatial independence of the process.
PointConfiguration resample_in_ball(const PointConfiguration& config,
                                    const Point& center, double radius,
                                    const RngStream& rng);

/// Volume of a radius-R ball in dimension d (R <= L/2, so the torus ball is
/// a Euclidean ball).
double ball_volume(int dim, double radius);

}  // namespace homog
