#include "homog/homogenize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace homog {

double HomogenizedTensorSample::residual_max() const {
  double r = 0.0;
  for (int k = 0; k < dim; ++k) r = std::max(r, residuals[k]);
  return r;
}

double ahom_entry(const CoefficientField& a, const CorrectorSolution& sol,
                  const Eigen::Vector3d& xi_prime) {
  const TorusGrid& g = a.grid;
  const std::int64_t n = g.cell_count();
  double sum = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    if (xi_prime[axis] == 0.0) continue;
    sum += xi_prime[axis] *
           (a.face_values.values.segment(axis * n, n) *
            sol.flux_gradient.values.segment(axis * n, n))
               .sum();
  }
  return sum * g.cell_volume() / g.volume();
}

double ahom_bilinear(const CoefficientField& a, const CorrectorSolution& sol,
                     const CorrectorSolution& adjoint) {
  const TorusGrid& g = a.grid;
  const std::int64_t n = g.cell_count();
  double sum = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    sum += (adjoint.flux_gradient.values.segment(axis * n, n) *
            a.face_values.values.segment(axis * n, n) *
            sol.flux_gradient.values.segment(axis * n, n))
               .sum();
  }
  return sum * g.cell_volume() / g.volume();
}

HomogenizedTensorSample ahom_matrix(const CoefficientField& a, const SolverConfig& cfg) {
  const TorusGrid& g = a.grid;
  HomogenizedTensorSample sample;
  sample.dim = g.dim;
  sample.side = g.side;
  sample.cells_per_unit = g.cells_per_unit;
  sample.lambda = a.min_cell_value();
  for (int i = 0; i < g.dim; ++i) {
    Eigen::Vector3d xi = Eigen::Vector3d::Zero();
    xi[i] = 1.0;
    CorrectorSolution sol;
    try {
      sol = solve_corrector(a, xi, cfg);
    } catch (const SolverFailure& f) {
      throw SolverFailure("direction e" + std::to_string(i + 1) + ": " + f.what(),
                          f.residual, f.iterations);
    }
    sample.residuals[i] = sol.residual_norm;
    for (int j = 0; j < g.dim; ++j) {
      Eigen::Vector3d xip = Eigen::Vector3d::Zero();
      xip[j] = 1.0;
      sample.entries(i, j) = ahom_entry(a, sol, xip);
    }
  }
  return sample;
}

double laminate_oracle(const Eigen::ArrayXd& profile, int axis, int direction) {
  if (profile.size() == 0) {
    throw std::invalid_argument("laminate_oracle: empty profile");
  }
  if (direction == axis) {
    return profile.size() / (1.0 / profile).sum();
  }
  return profile.mean();
}

namespace {

std::vector<std::int64_t> differing_cells(const CoefficientField& a0,
                                          const CoefficientField& a1) {
  std::vector<std::int64_t> cells;
  const std::int64_t n = a0.grid.cell_count();
  for (std::int64_t c = 0; c < n; ++c) {
    if (a0.cell_values.values[c] != a1.cell_values.values[c]) cells.push_back(c);
  }
  return cells;
}

}  // namespace

DualityIdentityReport verify_duality_identity(const CoefficientField& a0,
                                              const CoefficientField& a1,
                                              const ProbeDirections& dirs,
                                              const SolverConfig& cfg) {
  const TorusGrid& g = a0.grid;
  if (!g.same_layout(a1.grid)) {
    throw std::invalid_argument("verify_duality_identity: grids do not match");
  }

  const std::vector<std::int64_t> diff = differing_cells(a0, a1);

  const CorrectorSolution sol0 = solve_corrector(a0, dirs.xi, cfg);
  const CorrectorSolution sol1 = solve_corrector(a1, dirs.xi, cfg);
  const CorrectorSolution adj0 = dirs.primal_equals_adjoint()
                                     ? sol0
                                     : solve_adjoint_corrector(a0, dirs.xi_prime, cfg);

  DualityIdentityReport report;
  report.differing_cells = static_cast<std::int64_t>(diff.size());
  report.lhs = g.volume() * (ahom_entry(a1, sol1, dirs.xi_prime) -
                             ahom_entry(a0, sol0, dirs.xi_prime));

  const std::int64_t n = g.cell_count();
  double rhs = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    rhs += (adj0.flux_gradient.values.segment(axis * n, n) *
            (a1.face_values.values.segment(axis * n, n) -
             a0.face_values.values.segment(axis * n, n)) *
            sol1.flux_gradient.values.segment(axis * n, n))
               .sum();
  }
  report.rhs = rhs * g.cell_volume();

  report.abs_residual = std::abs(report.lhs - report.rhs);
  report.rel_residual =
      report.abs_residual / (std::abs(report.lhs) + std::abs(report.rhs) + 1e-300);
  report.identity_ok = report.rel_residual <= 1e-6;

  const double e_adj0 = local_energy(adj0, diff);
  const double e_sol1 = local_energy(sol1, diff);
  const double e_sol0 = local_energy(sol0, diff);
  report.bound_constant_free = std::sqrt(e_adj0) * std::sqrt(e_sol1);
  report.bound_base_energies = std::sqrt(e_adj0) * std::sqrt(e_sol0);
  report.bound_ok = std::abs(report.lhs) <=
                    report.bound_constant_free + 1e-6 * (1.0 + report.bound_constant_free);
  return report;
}

ResampleStudy resample_functional_study(const PointConfiguration& base,
                                        const TorusGrid& grid, double lambda,
                                        const ProbeDirections& dirs,
                                        const OscProbe& probe, const RngStream& rng,
                                        const SolverConfig& cfg, OscTarget target,
                                        bool with_energies) {
  if (probe.resamples < 1) {
    throw std::invalid_argument("resample study needs at least one resample");
  }
  const std::vector<std::int64_t> influence =
      cells_within(grid, probe.center, probe.radius + 1.0);

  ResampleStudy study;
  const std::int64_t origin_cell = grid.cell_containing(Point::Zero());

  auto evaluate = [&](const PointConfiguration& points, double& value, double& e_primal,
                      double& e_adjoint) {
    const CoefficientField a = rasterize_coefficient(points, grid, lambda);
    const CorrectorSolution sol = solve_corrector(a, dirs.xi, cfg);
    value = target == OscTarget::ahom_entry ? ahom_entry(a, sol, dirs.xi_prime)
                                            : sol.phi.values[origin_cell];
    if (with_energies) {
      e_primal = local_energy(sol, influence);
      if (dirs.primal_equals_adjoint()) {
        e_adjoint = e_primal;
      } else {
        e_adjoint = local_energy(solve_adjoint_corrector(a, dirs.xi_prime, cfg), influence);
      }
    }
  };

  evaluate(base, study.base_value, study.base_energy_primal, study.base_energy_adjoint);

  const RngStream resample_root = rng.with_label(RngLabel::resampling);
  study.values.resize(probe.resamples);
  if (with_energies) {
    study.energy_primal.resize(probe.resamples);
    study.energy_adjoint.resize(probe.resamples);
  }
  for (int k = 0; k < probe.resamples; ++k) {
    const PointConfiguration resampled = resample_in_ball(
        base, probe.center, probe.radius, resample_root.derive(static_cast<std::uint64_t>(k)));
    double value = 0.0, ep = 0.0, ea = 0.0;
    evaluate(resampled, value, ep, ea);
    study.values[k] = value;
    if (with_energies) {
      study.energy_primal[k] = ep;
      study.energy_adjoint[k] = ea;
    }
  }
  return study;
}

OscillationReport oscillation_bound_check(const PointConfiguration& base,
                                          const TorusGrid& grid, double lambda,
                                          const ProbeDirections& dirs,
                                          const OscProbe& probe, const RngStream& rng,
                                          const SolverConfig& cfg) {
  const ResampleStudy study =
      resample_functional_study(base, grid, lambda, dirs, probe, rng, cfg,
                                OscTarget::ahom_entry, /*with_energies=*/true);

  OscillationReport report;
  report.values = study.values;
  const auto [lo, hi] = std::minmax_element(study.values.begin(), study.values.end());
  report.empirical_osc = *hi - *lo;

  // Diagnostic (T.7)-style ratio against the base-field energies over B_R.
  const double inv_vol = 1.0 / grid.volume();
  {
    const std::vector<std::int64_t> ball = cells_within(grid, probe.center, probe.radius);
    const CoefficientField a = rasterize_coefficient(base, grid, lambda);
    const CorrectorSolution sol = solve_corrector(a, dirs.xi, cfg);
    const double e_primal = local_energy(sol, ball);
    const double e_adjoint =
        dirs.primal_equals_adjoint()
            ? e_primal
            : local_energy(solve_adjoint_corrector(a, dirs.xi_prime, cfg), ball);
    const double denom = inv_vol * std::sqrt(e_adjoint) * std::sqrt(e_primal);
    report.t7_ratio = denom > 0.0 ? report.empirical_osc / denom
                                  : std::numeric_limits<double>::quiet_NaN();
  }

  // Constant-free pairwise sensitivity bound, every ordered pair (k adjoint
  // side, l primal side).
  const int m_count = static_cast<int>(study.values.size());
  for (int k = 0; k < m_count; ++k) {
    for (int l = 0; l < m_count; ++l) {
      if (k == l) continue;
      const double diff = std::abs(study.values[k] - study.values[l]);
      const double bound =
          inv_vol * std::sqrt(study.energy_adjoint[k]) * std::sqrt(study.energy_primal[l]);
      ++report.pairs_checked;
      const double violation = diff - bound - 1e-6 * (1.0 + bound);
      if (violation > 0.0) {
        ++report.pairs_failed;
        report.max_violation = std::max(report.max_violation, violation);
      }
    }
  }
  report.pairwise_ok = report.pairs_failed == 0;
  return report;
}

}  // namespace homog
