#ifndef VARPSTOKES_TIME_NEWTON_HPP
#define VARPSTOKES_TIME_NEWTON_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "varpstokes/assembly.hpp"

namespace varpstokes {

// Uniform grid 0 = t_0 < ... < t_M = T.
struct TimeGrid {
  double T = 0.1;
  int M = 4;

  double tau() const { return T / M; }
  double node(int m) const { return T * m / M; }

  // Refinement level n uses 2^{n+2} steps.
  static TimeGrid for_level(double T, int level) {
    return TimeGrid{T, 1 << (level + 2)};
  }
};

struct NewtonOptions {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int max_iter = 50;
  int max_backtrack = 20;
};

struct StepStats {
  int newton_iterations = 0;
  double initial_residual = 0.0;
  double final_residual = 0.0;
};

class SolverFailure : public std::runtime_error {
public:
  SolverFailure(const std::string& what, int step, double t, double residual)
      : std::runtime_error(what), step(step), t(t), residual(residual) {}
  int step;
  double t;
  double residual;
};

// Sparse direct solve (LU with fill-reducing ordering) followed by iterative
// refinement to relative residual <= 1e-12. Throws SolverFailure otherwise.
Vector solve_sparse(const SparseMatrix& a, const Vector& b);

// Damped Newton on one slab. z carries the initial guess and the solution;
// boundary velocity entries are clamped to prob.bc throughout.
StepStats newton_solve_slab(const SlabProblem& prob, const Vector& v_prev,
                            Vector& z, const NewtonOptions& opt, int step_index);

// Slab solution history of one backward-Euler run.
// velocity[m] is the state at t_m (m = 0..M); velocity[0] is the L2 projection
// of the initial field; every stored velocity satisfies the boundary condition
// exactly. pressure[m-1] / multiplier[m-1] / stats[m-1] belong to slab m.
struct SlabHistory {
  TimeGrid grid;
  std::vector<Vector> velocity;
  std::vector<Vector> pressure;
  std::vector<double> multiplier;
  std::vector<StepStats> stats;
};

using StepCallback =
    std::function<void(int step, int total, double t, const StepStats&)>;

SlabHistory run_time_loop(const TaylorHoodSpace& space,
                          const ManufacturedSolution& data, const TimeGrid& grid,
                          const QuadRule& rule, const NewtonOptions& opt,
                          const StepCallback& on_step = {});

} // namespace varpstokes

#endif
