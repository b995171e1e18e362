#include "varpstokes/fem_space.hpp"

#include <Eigen/SparseCholesky>
#include <stdexcept>

#include "varpstokes/quadrature.hpp"

namespace varpstokes {

std::array<double, 6> ScalarP2::values(const Vec2& xhat) {
  const double l1 = 1.0 - xhat[0] - xhat[1];
  const double l2 = xhat[0];
  const double l3 = xhat[1];
  return {l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0), l3 * (2.0 * l3 - 1.0),
          4.0 * l1 * l2,         4.0 * l2 * l3,         4.0 * l3 * l1};
}

std::array<Vec2, 6> ScalarP2::gradients(const Vec2& xhat) {
  const double l1 = 1.0 - xhat[0] - xhat[1];
  const double l2 = xhat[0];
  const double l3 = xhat[1];
  const Vec2 g1(-1.0, -1.0), g2(1.0, 0.0), g3(0.0, 1.0);
  return {(4.0 * l1 - 1.0) * g1,
          (4.0 * l2 - 1.0) * g2,
          (4.0 * l3 - 1.0) * g3,
          4.0 * (l2 * g1 + l1 * g2),
          4.0 * (l3 * g2 + l2 * g3),
          4.0 * (l1 * g3 + l3 * g1)};
}

std::array<double, 3> ScalarP1::values(const Vec2& xhat) {
  return {1.0 - xhat[0] - xhat[1], xhat[0], xhat[1]};
}

std::array<Vec2, 3> ScalarP1::gradients() {
  return {Vec2(-1.0, -1.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
}

TaylorHoodSpace::TaylorHoodSpace(const Mesh& mesh) : mesh_(&mesh) {
  const int nv = static_cast<int>(mesh.n_vertices());
  const int ne = static_cast<int>(mesh.n_edges());
  n_scalar_ = nv + ne;
  n_pressure_ = nv;
  nodes_.reserve(n_scalar_);
  node_boundary_.reserve(n_scalar_);
  for (int v = 0; v < nv; ++v) {
    nodes_.push_back(mesh.vertex(v));
    node_boundary_.push_back(mesh.vertex_on_boundary(v));
  }
  for (int e = 0; e < ne; ++e) {
    nodes_.push_back(mesh.edge_midpoint(e));
    node_boundary_.push_back(mesh.edge_on_boundary(e));
  }
  for (int i = 0; i < n_scalar_; ++i)
    if (node_boundary_[i]) boundary_nodes_.push_back(i);
}

std::array<int, 6> TaylorHoodSpace::cell_scalar_nodes(int c) const {
  const auto& v = mesh_->cell(c);
  const auto& e = mesh_->cell_edges(c);
  const int nv = static_cast<int>(mesh_->n_vertices());
  return {v[0], v[1], v[2], nv + e[0], nv + e[1], nv + e[2]};
}

SparseMatrix assemble_scalar_mass(const TaylorHoodSpace& space, int quad_degree) {
  const Mesh& mesh = space.mesh();
  const QuadRule& rule = QuadRule::triangle(quad_degree);
  std::vector<Triplet> trip;
  trip.reserve(mesh.n_cells() * 36);
  for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap m = mesh.map(static_cast<int>(c));
    const auto nodes = space.cell_scalar_nodes(static_cast<int>(c));
    for (const auto& q : rule.points) {
      const auto val = ScalarP2::values(q.xhat);
      const double wd = q.w * m.det;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          trip.emplace_back(nodes[i], nodes[j], wd * val[i] * val[j]);
    }
  }
  SparseMatrix mass(space.n_scalar(), space.n_scalar());
  mass.setFromTriplets(trip.begin(), trip.end());
  mass.makeCompressed();
  return mass;
}

Vector interpolate_velocity(const TaylorHoodSpace& space,
                            const std::function<Vec2(const Vec2&)>& f) {
  Vector out(space.n_velocity());
  for (int i = 0; i < space.n_scalar(); ++i) {
    const Vec2 y = f(space.scalar_node(i));
    out[space.velocity_dof(0, i)] = y[0];
    out[space.velocity_dof(1, i)] = y[1];
  }
  return out;
}

Vector l2_project_velocity(const TaylorHoodSpace& space,
                           const std::function<Vec2(const Vec2&)>& f,
                           int quad_degree) {
  const Mesh& mesh = space.mesh();
  const QuadRule& rule = QuadRule::triangle(quad_degree);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(space.n_scalar(), 2);
  for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap m = mesh.map(static_cast<int>(c));
    const auto nodes = space.cell_scalar_nodes(static_cast<int>(c));
    for (const auto& q : rule.points) {
      const auto val = ScalarP2::values(q.xhat);
      const Vec2 y = f(m.B * q.xhat + m.b);
      const double wd = q.w * m.det;
      for (int i = 0; i < 6; ++i) {
        rhs(nodes[i], 0) += wd * val[i] * y[0];
        rhs(nodes[i], 1) += wd * val[i] * y[1];
      }
    }
  }

  const SparseMatrix mass = assemble_scalar_mass(space);
  Eigen::SimplicialLDLT<SparseMatrix> solver(mass);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("mass matrix factorization failed");

  Vector out(space.n_velocity());
  for (int comp = 0; comp < 2; ++comp) {
    const Vector b = rhs.col(comp);
    Vector x = solver.solve(b);
    const double bnorm = b.norm();
    for (int it = 0; it < 5 && bnorm > 0.0; ++it) {
      const Vector r = b - mass * x;
      if (r.norm() <= 1e-12 * bnorm) break;
      x += solver.solve(r);
    }
    if (bnorm > 0.0 && (b - mass * x).norm() > 1e-12 * bnorm)
      throw std::runtime_error("projection solve did not reach 1e-12");
    for (int i = 0; i < space.n_scalar(); ++i)
      out[space.velocity_dof(comp, i)] = x[i];
  }
  return out;
}

Vector boundary_velocity_values(const TaylorHoodSpace& space,
                                const std::function<Vec2(const Vec2&)>& f) {
  Vector out = Vector::Zero(space.n_velocity());
  for (int i : space.boundary_scalar_nodes()) {
    const Vec2 y = f(space.scalar_node(i));
    out[space.velocity_dof(0, i)] = y[0];
    out[space.velocity_dof(1, i)] = y[1];
  }
  return out;
}

} // namespace varpstokes
