#include "homog/cell_solver.hpp"

#include "homog/fft_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace homog {

namespace {

// Walks every face (axis, cell) of the grid in fixed lexicographic order and
// hands (face linear index, cell index, +1-neighbor index) to the body.
template <class Body>
void for_each_face(const TorusGrid& g, int axis, Body&& body) {
  const std::int64_t n = g.cell_count();
  const std::int64_t stride = g.stride(axis);
  const std::int64_t wrap = stride * g.extent(axis);
  const std::int64_t face_base = static_cast<std::int64_t>(axis) * n;
  const int e0 = g.extent(0), e1 = g.extent(1), e2 = g.extent(2);
  const int last = g.extent(axis) - 1;
  std::int64_t idx = 0;
  int c[3];
  for (c[0] = 0; c[0] < e0; ++c[0])
    for (c[1] = 0; c[1] < e1; ++c[1])
      for (c[2] = 0; c[2] < e2; ++c[2], ++idx) {
        const std::int64_t nb = c[axis] < last ? idx + stride : idx + stride - wrap;
        body(face_base + idx, idx, nb);
      }
}

void apply_operator_raw(const CoefficientField& a, const double* uv, double* ov) {
  const TorusGrid& g = a.grid;
  std::fill(ov, ov + g.cell_count(), 0.0);
  const double inv_h2 = 1.0 / (g.h * g.h);
  const double* av = a.face_values.values.data();
  for (int axis = 0; axis < g.dim; ++axis) {
    for_each_face(g, axis, [&](std::int64_t f, std::int64_t c, std::int64_t nb) {
      const double flux = av[f] * (uv[nb] - uv[c]) * inv_h2;
      ov[c] -= flux;
      ov[nb] += flux;
    });
  }
}

void check_elliptic(const CoefficientField& a) {
  if (!(a.face_values.values.minCoeff() > 0.0)) {
    throw std::invalid_argument("coefficient field is not uniformly elliptic");
  }
}

void check_unit(const Eigen::Vector3d& xi) {
  if (std::abs(xi.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("direction must be a unit vector");
  }
}

}  // namespace

ScalarField apply_operator(const CoefficientField& a, const ScalarField& u) {
  const TorusGrid& g = a.grid;
  if (!g.same_layout(u.grid)) {
    throw std::invalid_argument("apply_operator: grids do not match");
  }
  ScalarField out = ScalarField::zero(g);
  apply_operator_raw(a, u.values.data(), out.values.data());
  return out;
}

ScalarField face_divergence(const FaceField& flux) {
  const TorusGrid& g = flux.grid;
  ScalarField out = ScalarField::zero(g);
  const double inv_h = 1.0 / g.h;
  const double* fv = flux.values.data();
  double* ov = out.values.data();
  for (int axis = 0; axis < g.dim; ++axis) {
    for_each_face(g, axis, [&](std::int64_t f, std::int64_t c, std::int64_t nb) {
      const double v = fv[f] * inv_h;
      ov[c] += v;
      ov[nb] -= v;
    });
  }
  return out;
}

FaceField face_flux_of_direction(const CoefficientField& a, const Eigen::Vector3d& xi) {
  const TorusGrid& g = a.grid;
  FaceField flux = FaceField::zero(g);
  const std::int64_t n = g.cell_count();
  for (int axis = 0; axis < g.dim; ++axis) {
    flux.values.segment(axis * n, n) =
        a.face_values.values.segment(axis * n, n) * xi[axis];
  }
  return flux;
}

ScalarField rhs_for_direction(const CoefficientField& a, const Eigen::Vector3d& xi) {
  return face_divergence(face_flux_of_direction(a, xi));
}

namespace {

FaceField assemble_flux_gradient(const TorusGrid& g, const Eigen::ArrayXd& phi,
                                 const Eigen::Vector3d& xi) {
  FaceField grad = FaceField::zero(g);
  const double inv_h = 1.0 / g.h;
  double* gv = grad.values.data();
  const double* pv = phi.data();
  for (int axis = 0; axis < g.dim; ++axis) {
    const double xik = xi[axis];
    for_each_face(g, axis, [&](std::int64_t f, std::int64_t c, std::int64_t nb) {
      gv[f] = (pv[nb] - pv[c]) * inv_h + xik;
    });
  }
  return grad;
}

}  // namespace

CorrectorSolution solve_corrector(const CoefficientField& a, const Eigen::Vector3d& xi,
                                  const SolverConfig& cfg) {
  check_elliptic(a);
  check_unit(xi);
  if (!(cfg.tolerance > 0.0)) {
    throw std::invalid_argument("solver tolerance must be positive");
  }
  const TorusGrid& g = a.grid;
  const std::int64_t n = g.cell_count();
  const int max_iter = cfg.max_iterations > 0 ? cfg.max_iterations : 10 * g.m;

  ScalarField rhs = rhs_for_direction(a, xi);
  rhs.values -= rhs.values.mean();
  const double rhs_norm = rhs.values.matrix().norm();

  CorrectorSolution sol;
  sol.xi = xi;
  if (rhs_norm == 0.0) {
    sol.phi = ScalarField::zero(g);
    sol.flux_gradient = assemble_flux_gradient(g, sol.phi.values, xi);
    sol.residual_norm = 0.0;
    sol.iterations = 0;
    return sol;
  }

  const bool precondition =
      cfg.preconditioner == SolverConfig::Preconditioner::constant_coefficient_inverse;
  std::unique_ptr<ConstantCoefficientInverse> inv;
  if (precondition) inv = std::make_unique<ConstantCoefficientInverse>(g);

  ScalarField x = ScalarField::zero(g);
  ScalarField r = rhs;  // r = b - A*0
  Eigen::ArrayXd z(n), p(n), q(n);

  auto precondition_into = [&](const Eigen::ArrayXd& in, Eigen::ArrayXd& out) {
    if (precondition) {
      inv->apply(in, out);
      out -= out.mean();
    } else {
      out = in;
      out -= out.mean();
    }
  };

  precondition_into(r.values, z);
  p = z;
  double rho = (r.values * z).sum();
  double rel_residual = r.values.matrix().norm() / rhs_norm;
  int iterations = 0;

  // Plain relative l2 residual is the convergence contract; the recursive CG
  // residual is re-anchored against b - A x before accepting convergence.
  while (rel_residual > cfg.tolerance) {
    if (iterations >= max_iter) {
      throw SolverFailure("corrector solve did not converge: residual " +
                              std::to_string(rel_residual) + " after " +
                              std::to_string(iterations) + " iterations",
                          rel_residual, iterations);
    }
    apply_operator_raw(a, p.data(), q.data());
    const double pq = (p * q).sum();
    if (!(pq > 0.0) || !std::isfinite(pq)) {
      throw SolverFailure("CG breakdown (operator lost positivity or NaN)",
                          rel_residual, iterations);
    }
    const double alpha = rho / pq;
    x.values += alpha * p;
    r.values -= alpha * q;
    ++iterations;

    rel_residual = r.values.matrix().norm() / rhs_norm;
    if (rel_residual <= cfg.tolerance || iterations % 64 == 0) {
      // re-anchor: explicit residual, mean projection, NaN check
      x.values -= x.values.mean();
      if (!x.values.allFinite()) {
        throw SolverFailure("NaN detected in iterate", rel_residual, iterations);
      }
      r.values = rhs.values - apply_operator(a, x).values;
      r.values -= r.values.mean();
      rel_residual = r.values.matrix().norm() / rhs_norm;
      if (rel_residual <= cfg.tolerance) break;
      precondition_into(r.values, z);
      p = z;
      rho = (r.values * z).sum();
      continue;
    }

    precondition_into(r.values, z);
    const double rho_next = (r.values * z).sum();
    const double beta = rho_next / rho;
    rho = rho_next;
    p = z + beta * p;
  }

  x.values -= x.values.mean();
  sol.phi = x;
  sol.flux_gradient = assemble_flux_gradient(g, x.values, xi);
  sol.residual_norm = rel_residual;
  sol.iterations = iterations;
  return sol;
}

CorrectorSolution solve_adjoint_corrector(const CoefficientField& a,
                                          const Eigen::Vector3d& xi_prime,
                                          const SolverConfig& cfg) {
  return solve_corrector(transpose_field(a), xi_prime, cfg);
}

double local_energy(const CorrectorSolution& sol, std::span<const std::int64_t> cells) {
  const TorusGrid& g = sol.phi.grid;
  std::vector<std::int64_t> faces;
  faces.reserve(cells.size() * 2 * g.dim);
  for (const std::int64_t c : cells) {
    for (int axis = 0; axis < g.dim; ++axis) {
      faces.push_back(g.face_index(axis, c));
      faces.push_back(g.face_index(axis, g.neighbor(c, axis, -1)));
    }
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  double sum = 0.0;
  for (const std::int64_t f : faces) {
    const double v = sol.flux_gradient.values[f];
    sum += v * v;
  }
  return g.cell_volume() * sum;
}

double gradient_energy(const ScalarField& u) {
  const TorusGrid& g = u.grid;
  const double inv_h = 1.0 / g.h;
  const double* pv = u.values.data();
  double sum = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    for_each_face(g, axis, [&](std::int64_t, std::int64_t c, std::int64_t nb) {
      const double d = (pv[nb] - pv[c]) * inv_h;
      sum += d * d;
    });
  }
  return g.cell_volume() * sum;
}

}  // namespace homog
