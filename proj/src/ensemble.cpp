#include "homog/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace homog {

double ball_volume(int dim, double radius) {
  switch (dim) {
    case 1:
      return 2.0 * radius;
    case 2:
      return std::numbers::pi * radius * radius;
    case 3:
      return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  }
  throw std::invalid_argument("ball_volume: dimension must be 1, 2, or 3");
}

PointConfiguration sample_points(double side, int dim, const RngStream& rng) {
  double volume = 1.0;
  for (int k = 0; k < dim; ++k) volume *= side;

  auto eng = rng.engine();
  const std::uint64_t count = poisson_knuth(eng, volume);

  PointConfiguration config;
  config.dim = dim;
  config.side = side;
  config.seed = rng;
  config.points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Point p = Point::Zero();
    for (int k = 0; k < dim; ++k) p[k] = uniform_in(eng, -0.5 * side, 0.5 * side);
    config.points.push_back(p);
  }
  return config;
}

CoefficientField rasterize_coefficient(const PointConfiguration& config,
                                       const TorusGrid& grid, double lambda) {
  if (grid.dim != config.dim || grid.side != config.side) {
    throw std::invalid_argument("rasterize_coefficient: grid does not match configuration");
  }
  EllipticityParams::create(lambda);

  ScalarField cells = ScalarField::constant(grid, 1.0);
  const std::int64_t n = grid.cell_count();
  for (std::int64_t c = 0; c < n; ++c) {
    const Point x = grid.cell_center(c);
    for (const Point& p : config.points) {
      if (torus_distance(x, p, grid.side, grid.dim) < 1.0) {
        cells.values[c] = lambda;
        break;
      }
    }
  }
  return CoefficientField::from_cell_values(std::move(cells));
}

PointConfiguration resample_in_ball(const PointConfiguration& config,
                                    const Point& center, double radius,
                                    const RngStream& rng) {
  if (radius > 0.5 * config.side) {
    throw std::invalid_argument("resample_in_ball: radius exceeds L/2");
  }
  PointConfiguration out;
  out.dim = config.dim;
  out.side = config.side;
  out.seed = rng;
  for (const Point& p : config.points) {
    if (torus_distance(p, center, config.side, config.dim) >= radius) {
      out.points.push_back(p);
    }
  }

  auto eng = rng.engine();
  const std::uint64_t count = poisson_knuth(eng, ball_volume(config.dim, radius));
  // Uniform in the ball by rejection from its bounding cube, then wrapped
  // into the fundamental domain.
  for (std::uint64_t i = 0; i < count; ++i) {
    Point p = Point::Zero();
    for (;;) {
      for (int k = 0; k < config.dim; ++k) {
        p[k] = uniform_in(eng, center[k] - radius, center[k] + radius);
      }
      if (torus_distance(p, center, config.side, config.dim) < radius) break;
    }
    out.points.push_back(wrap_point(p, config.side, config.dim));
  }
  return out;
}

}  // namespace homog
