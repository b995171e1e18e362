#ifndef VARPSTOKES_FEM_SPACE_HPP
#define VARPSTOKES_FEM_SPACE_HPP

#include <array>
#include <functional>
#include <vector>

#include "varpstokes/mesh.hpp"
#include "varpstokes/types.hpp"

namespace varpstokes {

// Quadratic Lagrange basis on the reference triangle. Local node order:
// vertices v0,v1,v2 then edge midpoints (v0,v1), (v1,v2), (v2,v0).
struct ScalarP2 {
  static std::array<double, 6> values(const Vec2& xhat);
  static std::array<Vec2, 6> gradients(const Vec2& xhat); // reference gradients
};

// Linear Lagrange basis (barycentric coordinates).
struct ScalarP1 {
  static std::array<double, 3> values(const Vec2& xhat);
  static std::array<Vec2, 3> gradients(); // constant
};

// Taylor-Hood pair on a Mesh: velocity in (continuous P2)^2, pressure in
// continuous P1, plus one scalar multiplier pinning the pressure mean.
// System dof layout: [vx block | vy block | pressure | multiplier].
class TaylorHoodSpace {
public:
  explicit TaylorHoodSpace(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }

  int n_scalar() const { return n_scalar_; }       // vertices + edges
  int n_velocity() const { return 2 * n_scalar_; } // two components
  int n_pressure() const { return n_pressure_; }   // vertices
  int n_system() const { return 2 * n_scalar_ + n_pressure_ + 1; }

  int velocity_dof(int comp, int scalar_node) const {
    return comp * n_scalar_ + scalar_node;
  }
  int pressure_dof(int vertex) const { return 2 * n_scalar_ + vertex; }
  int multiplier_dof() const { return 2 * n_scalar_ + n_pressure_; }

  // Scalar nodes of a cell in ScalarP2 local order.
  std::array<int, 6> cell_scalar_nodes(int c) const;

  const Vec2& scalar_node(int i) const { return nodes_[i]; }
  bool scalar_node_on_boundary(int i) const { return node_boundary_[i]; }
  bool velocity_dof_on_boundary(int dof) const {
    return node_boundary_[dof % n_scalar_];
  }
  const std::vector<int>& boundary_scalar_nodes() const { return boundary_nodes_; }

private:
  const Mesh* mesh_;
  int n_scalar_;
  int n_pressure_;
  std::vector<Vec2> nodes_;
  std::vector<bool> node_boundary_;
  std::vector<int> boundary_nodes_;
};

// Scalar P2 mass matrix (SPD; entries sum to |Omega|).
SparseMatrix assemble_scalar_mass(const TaylorHoodSpace& space, int quad_degree = 4);

// Nodal interpolation of a vector field into the velocity block layout.
Vector interpolate_velocity(const TaylorHoodSpace& space,
                            const std::function<Vec2(const Vec2&)>& f);

// Global L2 projection onto the velocity space (unconstrained). The linear
// solves are refined to relative residual <= 1e-12.
Vector l2_project_velocity(const TaylorHoodSpace& space,
                           const std::function<Vec2(const Vec2&)>& f,
                           int quad_degree = 6);

// Velocity-sized vector holding f at boundary nodes, zero elsewhere.
Vector boundary_velocity_values(const TaylorHoodSpace& space,
                                const std::function<Vec2(const Vec2&)>& f);

} // namespace varpstokes

#endif
