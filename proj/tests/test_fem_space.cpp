#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/SparseCholesky>

#include "varpstokes/fem_space.hpp"

namespace varpstokes {
namespace {

// Evaluates a velocity coefficient vector at a reference point of a cell.
Vec2 eval_velocity(const TaylorHoodSpace& space, const Vector& coeffs, int cell,
                   const Vec2& xhat) {
  const auto nodes = space.cell_scalar_nodes(cell);
  const auto vals = ScalarP2::values(xhat);
  Vec2 v = Vec2::Zero();
  for (int i = 0; i < 6; ++i)
    for (int c = 0; c < 2; ++c)
      v[c] += coeffs[space.velocity_dof(c, nodes[i])] * vals[i];
  return v;
}

TEST_CASE("reference bases are Lagrange bases") {
  // P2 local order: vertices, then midpoints of (v0,v1), (v1,v2), (v2,v0).
  const Vec2 nodes[6] = {{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}};
  for (int i = 0; i < 6; ++i) {
    const auto vals = ScalarP2::values(nodes[i]);
    for (int j = 0; j < 6; ++j)
      CHECK(vals[j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
  }

  const auto p1 = ScalarP1::values(Vec2(0.3, 0.5));
  CHECK(p1[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(p1[1] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(p1[2] == doctest::Approx(0.5).epsilon(1e-14));

  // Partition of unity and vanishing gradient sum at random points.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    Vec2 xhat(u(rng), u(rng));
    if (xhat.sum() > 1.0) xhat = Vec2(1.0, 1.0) - xhat;
    const auto vals = ScalarP2::values(xhat);
    const auto grads = ScalarP2::gradients(xhat);
    double vsum = 0.0;
    Vec2 gsum = Vec2::Zero();
    for (int j = 0; j < 6; ++j) {
      vsum += vals[j];
      gsum += grads[j];
    }
    CHECK(vsum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gsum.norm() <= 1e-13);
  }
}

TEST_CASE("dof counts and layout") {
  for (int level : {0, 1, 2}) {
    const Mesh mesh = Mesh::unit_square_refined(level);
    const TaylorHoodSpace space(mesh);
    const int expected_scalar =
        static_cast<int>(mesh.n_vertices() + mesh.n_edges());
    CHECK(space.n_scalar() == expected_scalar);
    CHECK(space.n_velocity() == 2 * expected_scalar);
    CHECK(space.n_pressure() == static_cast<int>(mesh.n_vertices()));
    CHECK(space.n_system() ==
          2 * expected_scalar + static_cast<int>(mesh.n_vertices()) + 1);
    CHECK(space.multiplier_dof() == space.n_system() - 1);

    // Boundary dofs are exactly the nodes on the square rim.
    for (int i = 0; i < space.n_scalar(); ++i) {
      const Vec2& x = space.scalar_node(i);
      const bool on_rim =
          x[0] == 0.0 || x[0] == 1.0 || x[1] == 0.0 || x[1] == 1.0;
      CHECK(space.scalar_node_on_boundary(i) == on_rim);
      CHECK(space.velocity_dof_on_boundary(space.velocity_dof(0, i)) == on_rim);
      CHECK(space.velocity_dof_on_boundary(space.velocity_dof(1, i)) == on_rim);
    }
  }
}

TEST_CASE("scalar mass matrix") {
  const Mesh mesh = Mesh::unit_square_refined(2);
  const TaylorHoodSpace space(mesh);
  const SparseMatrix mass = assemble_scalar_mass(space);
  REQUIRE(mass.rows() == space.n_scalar());

  CHECK((SparseMatrix(mass.transpose()) - mass).norm() <= 1e-15);

  // Entries sum to the domain area (the P2 partition of unity squared).
  CHECK(Vector::Ones(mass.rows()).dot(mass * Vector::Ones(mass.cols())) ==
        doctest::Approx(1.0).epsilon(1e-13));

  Eigen::SimplicialLLT<SparseMatrix> llt(mass);
  CHECK(llt.info() == Eigen::Success); // positive definite
}

TEST_CASE("nodal interpolation hits the nodes") {
  const Mesh mesh = Mesh::unit_square_refined(1);
  const TaylorHoodSpace space(mesh);
  const auto f = [](const Vec2& x) {
    return Vec2(x[0] * x[0] + x[1], x[0] - x[1] * x[1]);
  };
  const Vector coeffs = interpolate_velocity(space, f);
  REQUIRE(coeffs.size() == space.n_velocity());
  for (int i = 0; i < space.n_scalar(); ++i) {
    const Vec2 expected = f(space.scalar_node(i));
    CHECK(coeffs[space.velocity_dof(0, i)] == doctest::Approx(expected[0]));
    CHECK(coeffs[space.velocity_dof(1, i)] == doctest::Approx(expected[1]));
  }
}

TEST_CASE("quadratics are reproduced pointwise") {
  const Mesh mesh = Mesh::unit_square_refined(1);
  const TaylorHoodSpace space(mesh);
  const auto f = [](const Vec2& x) {
    return Vec2(1.0 + 2.0 * x[0] - x[1] + x[0] * x[1] + 3.0 * x[0] * x[0],
                x[1] * x[1] - 0.5 * x[0] * x[1]);
  };
  const Vector coeffs = interpolate_velocity(space, f);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int cell = static_cast<int>(rng() % mesh.n_cells());
    Vec2 xhat(u(rng), u(rng));
    if (xhat.sum() > 1.0) xhat = Vec2(1.0, 1.0) - xhat;
    const AffineMap map = mesh.map(cell);
    const Vec2 x = map.B * xhat + map.b;
    CHECK((eval_velocity(space, coeffs, cell, xhat) - f(x)).norm() <= 1e-12);
  }
}

TEST_CASE("projection agrees with interpolation inside the space") {
  const Mesh mesh = Mesh::unit_square_refined(1);
  const TaylorHoodSpace space(mesh);
  const auto f = [](const Vec2& x) {
    return Vec2(x[0] * x[1], x[0] * x[0] - x[1]);
  };
  const Vector proj = l2_project_velocity(space, f);
  const Vector interp = interpolate_velocity(space, f);
  CHECK((proj - interp).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("boundary values vector") {
  const Mesh mesh = Mesh::unit_square_refined(1);
  const TaylorHoodSpace space(mesh);
  const auto f = [](const Vec2& x) { return Vec2(x[0] + 1.0, x[1] - 2.0); };
  const Vector bc = boundary_velocity_values(space, f);
  REQUIRE(bc.size() == space.n_velocity());
  for (int i = 0; i < space.n_scalar(); ++i)
    for (int c = 0; c < 2; ++c) {
      const double got = bc[space.velocity_dof(c, i)];
      if (space.scalar_node_on_boundary(i))
        CHECK(got == doctest::Approx(f(space.scalar_node(i))[c]));
      else
        CHECK(got == 0.0);
    }
}

} // namespace
} // namespace varpstokes
