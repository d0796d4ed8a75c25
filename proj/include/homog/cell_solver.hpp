#pragma once

#include "homog/coefficient_field.hpp"
#include "homog/torus_grid.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>

namespace homog {

struct SolverConfig {
  enum class Preconditioner { none, constant_coefficient_inverse };

  double tolerance = 1e-9;  // relative l2 residual (absolute when rhs == 0)
  int max_iterations = 0;   // 0 -> 10*m
  Preconditioner preconditioner = Preconditioner::constant_coefficient_inverse;
};

/// Thrown on non-convergence or NaN; carries the achieved residual.
struct SolverFailure : std::runtime_error {
  SolverFailure(const std::string& what, double residual_, int iterations_)
      : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
  double residual;
  int iterations;
};

struct CorrectorSolution {
  ScalarField phi;           // mean-zero cell values
  FaceField flux_gradient;   // face values of grad(phi) + xi
  Eigen::Vector3d xi;
  double residual_norm = 0.0;
  int iterations = 0;
};

/// Conservative finite-volume operator u -> -div(a grad u):
/// (Au)_c = sum_axis [a_f+ (u_c - u_nb+) + a_f- (u_c - u_nb-)] / h^2.
/// Symmetric as a quadratic form, annihilates constants.
ScalarField apply_operator(const CoefficientField& a, const ScalarField& u);

/// Discrete cell divergence of a face field: sum_axis (F_{k,c} - F_{k,c-e_k})/h.
/// Sums to zero over the torus.
ScalarField face_divergence(const FaceField& flux);

/// Face field of the coefficient times a constant direction, a_{k,c} * xi_k.
FaceField face_flux_of_direction(const CoefficientField& a, const Eigen::Vector3d& xi);

/// Right-hand side div(a xi) of the corrector equation written as
/// -div(a grad phi) = div(a xi).
ScalarField rhs_for_direction(const CoefficientField& a, const Eigen::Vector3d& xi);

/// Solves -div(a(grad phi + xi)) = 0 with mean-zero phi by preconditioned CG
/// on the mean-zero subspace. |xi| must be 1. Throws SolverFailure on
/// non-convergence or NaN.
CorrectorSolution solve_corrector(const CoefficientField& a, const Eigen::Vector3d& xi,
                                  const SolverConfig& cfg);

/// Corrector of the pointwise-transpose field in direction xi'; identical
/// machinery for the scalar media here.
CorrectorSolution solve_adjoint_corrector(const CoefficientField& a,
                                          const Eigen::Vector3d& xi_prime,
                                          const SolverConfig& cfg);

/// h^d * sum over faces adjacent to the cells (each face once) of the squared
/// flux-gradient components. The face set is every face touching the cell set
/// from either side, which makes this the Cauchy-Schwarz majorant used by the
/// exact sensitivity identities.
double local_energy(const CorrectorSolution& sol, std::span<const std::int64_t> cells);

/// h^d * sum over all faces of squared face differences of u (no direction
/// added): the gradient energy of a plain scalar field.
double gradient_energy(const ScalarField& u);

}  // namespace homog
