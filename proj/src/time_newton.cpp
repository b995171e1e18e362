#include "varpstokes/time_newton.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

namespace varpstokes {

Vector solve_sparse(const SparseMatrix& a, const Vector& b) {
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success)
    throw SolverFailure("sparse LU factorization failed", -1, 0.0, 0.0);
  Vector x = lu.solve(b);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return Vector::Zero(b.size());
  for (int it = 0; it < 5; ++it) {
    const Vector r = b - a * x;
    if (r.norm() <= 1e-12 * bnorm) return x;
    x += lu.solve(r);
  }
  if ((b - a * x).norm() > 1e-12 * bnorm)
    throw SolverFailure("iterative refinement stalled above 1e-12", -1, 0.0, 0.0);
  return x;
}

namespace {

void clamp_boundary(const SlabProblem& prob, Vector& z) {
  const TaylorHoodSpace& space = *prob.space;
  const int ns = space.n_scalar();
  for (int node : space.boundary_scalar_nodes())
    for (int comp = 0; comp < 2; ++comp) {
      const int dof = comp * ns + node;
      z[dof] = prob.bc.size() ? prob.bc[dof] : 0.0;
    }
}

} // namespace

StepStats newton_solve_slab(const SlabProblem& prob, const Vector& v_prev,
                            Vector& z, const NewtonOptions& opt,
                            int step_index) {
  clamp_boundary(prob, z);
  Vector res = slab_residual(prob, z, v_prev);
  StepStats stats;
  stats.initial_residual = res.norm();
  const double target = std::max(opt.abs_tol, opt.rel_tol * stats.initial_residual);

  double rnorm = stats.initial_residual;
  while (rnorm > target) {
    if (stats.newton_iterations >= opt.max_iter)
      throw SolverFailure("Newton iteration limit reached", step_index, prob.t,
                          rnorm);
    const SparseMatrix jac = slab_jacobian(prob, z);
    Vector dz;
    try {
      dz = solve_sparse(jac, Vector(-res));
    } catch (const SolverFailure& f) {
      throw SolverFailure(f.what(), step_index, prob.t, rnorm);
    }

    bool accepted = false;
    double step = 1.0;
    for (int bt = 0; bt <= opt.max_backtrack; ++bt) {
      Vector z_try = z + step * dz;
      clamp_boundary(prob, z_try);
      Vector res_try = slab_residual(prob, z_try, v_prev);
      const double rnorm_try = res_try.norm();
      if (rnorm_try < rnorm) {
        z = std::move(z_try);
        res = std::move(res_try);
        rnorm = rnorm_try;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      throw SolverFailure("Newton line search found no descent", step_index,
                          prob.t, rnorm);
    ++stats.newton_iterations;
  }
  stats.final_residual = rnorm;
  return stats;
}

SlabHistory run_time_loop(const TaylorHoodSpace& space,
                          const ManufacturedSolution& data, const TimeGrid& grid,
                          const QuadRule& rule, const NewtonOptions& opt,
                          const StepCallback& on_step) {
  SlabHistory hist;
  hist.grid = grid;
  hist.velocity.reserve(grid.M + 1);
  hist.pressure.reserve(grid.M);
  hist.multiplier.reserve(grid.M);
  hist.stats.reserve(grid.M);

  Vector v0 = l2_project_velocity(
      space, [&](const Vec2& x) { return data.velocity(0.0, x); });
  // Keep the boundary condition exact at the nodes.
  const Vector bc0 = boundary_velocity_values(
      space, [&](const Vec2& x) { return data.velocity(0.0, x); });
  for (int node : space.boundary_scalar_nodes())
    for (int comp = 0; comp < 2; ++comp) {
      const int dof = space.velocity_dof(comp, node);
      v0[dof] = bc0[dof];
    }
  hist.velocity.push_back(v0);

  Vector z = Vector::Zero(space.n_system());
  for (int m = 1; m <= grid.M; ++m) {
    const double t = grid.node(m);
    SlabProblem prob;
    prob.space = &space;
    prob.rule = &rule;
    prob.stress = data.stress_params();
    prob.p_cell = freeze_exponent(space.mesh(), t, data);
    prob.t = t;
    prob.tau = grid.tau();
    prob.data = &data;
    prob.bc = boundary_velocity_values(
        space, [&](const Vec2& x) { return data.velocity(t, x); });

    z.head(space.n_velocity()) = hist.velocity.back();
    const StepStats stats = newton_solve_slab(prob, hist.velocity.back(), z, opt, m);

    hist.velocity.push_back(z.head(space.n_velocity()));
    hist.pressure.push_back(z.segment(space.n_velocity(), space.n_pressure()));
    hist.multiplier.push_back(z[space.multiplier_dof()]);
    hist.stats.push_back(stats);
    if (on_step) on_step(m, grid.M, t, stats);
  }
  return hist;
}

} // namespace varpstokes
