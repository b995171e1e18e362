#ifndef VARPSTOKES_ASSEMBLY_HPP
#define VARPSTOKES_ASSEMBLY_HPP

#include <vector>

#include "varpstokes/exponent.hpp"
#include "varpstokes/fem_space.hpp"
#include "varpstokes/mms.hpp"
#include "varpstokes/quadrature.hpp"

namespace varpstokes {

// Exponent frozen at the cell barycenters for one time slab.
std::vector<double> freeze_exponent(const Mesh& mesh, double t,
                                    const ManufacturedSolution& data);
std::vector<double> freeze_exponent(const Mesh& mesh, double t,
                                    const ExponentField& field);

// One backward-Euler slab ending at time t with step tau. The slab equations
// are the time-integrated ones divided by tau:
//   velocity rows:  ((v - v_prev)/tau, phi) + (S(Dv), Dphi) - (q, div phi)
//                   - (g(t), phi) - (G(t), Dphi)
//   pressure rows:  (div v, eta) + lambda (eta, 1)
//   multiplier row: (q, 1)
// Boundary velocity rows read v_i - bc_i and are eliminated row+column with a
// unit diagonal in the Jacobian. `data == nullptr` means zero forcing.
struct SlabProblem {
  const TaylorHoodSpace* space = nullptr;
  const QuadRule* rule = nullptr;
  StressParams stress;
  std::vector<double> p_cell;
  double t = 0.0;
  double tau = 1.0;
  const ManufacturedSolution* data = nullptr;
  Vector bc; // velocity-sized; only boundary entries are read. Empty => zero.
};

// z = [velocity | pressure | multiplier]; v_prev is velocity-sized.
Vector slab_residual(const SlabProblem& prob, const Vector& z, const Vector& v_prev);

SparseMatrix slab_jacobian(const SlabProblem& prob, const Vector& z);

// Weak residual of the exact fields under the frozen-exponent operator,
// evaluated on the slab ending at t (no interpolation of the data). Returns
// the l2 norms of the interior velocity rows and of the pressure rows; both
// decay under refinement for consistent data.
struct ConsistencyDiagnostic {
  double momentum = 0.0;
  double divergence = 0.0;
};
ConsistencyDiagnostic exact_weak_residual(const TaylorHoodSpace& space,
                                          const ManufacturedSolution& data,
                                          const QuadRule& rule, double t,
                                          double tau);

} // namespace varpstokes

#endif
