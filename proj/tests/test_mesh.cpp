#include "doctest.h"

#include <cmath>
#include <vector>

#include "varpstokes/mesh.hpp"

namespace varpstokes {
namespace {

TEST_CASE("crossed square counts and refinement recursion") {
  std::size_t v = 5, e = 8, c = 4;
  Mesh mesh = Mesh::unit_square_crossed();
  for (int level = 0; level <= 3; ++level) {
    if (level > 0) {
      // Uniform refinement: new vertices at edge midpoints, every edge splits
      // in two plus three interior edges per cell, every cell splits in four.
      const std::size_t vn = v + e, en = 2 * e + 3 * c, cn = 4 * c;
      mesh = mesh.refined();
      v = vn;
      e = en;
      c = cn;
    }
    CHECK(mesh.level() == level);
    CHECK(mesh.n_vertices() == v);
    CHECK(mesh.n_edges() == e);
    CHECK(mesh.n_cells() == c);
    // Euler relation for a simply connected planar triangulation.
    CHECK(static_cast<long>(mesh.n_vertices()) -
              static_cast<long>(mesh.n_edges()) +
              static_cast<long>(mesh.n_cells()) ==
          1);
    CHECK(mesh.h() == std::pow(0.5, level));
  }
}

TEST_CASE("factory levels agree with repeated refinement") {
  const Mesh direct = Mesh::unit_square_refined(2);
  const Mesh stepped = Mesh::unit_square_crossed().refined().refined();
  REQUIRE(direct.n_vertices() == stepped.n_vertices());
  for (std::size_t i = 0; i < direct.n_vertices(); ++i)
    CHECK((direct.vertex(static_cast<int>(i)) -
           stepped.vertex(static_cast<int>(i)))
              .norm() == 0.0);
}

TEST_CASE("geometry: areas, orientation, shape regularity") {
  for (int level : {0, 1, 2, 3}) {
    const Mesh mesh = Mesh::unit_square_refined(level);
    double area = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
      const AffineMap map = mesh.map(static_cast<int>(c));
      CHECK(map.det > 0.0); // ccw cells only
      area += 0.5 * map.det;

      // Every cell is a right isoceles triangle: angles pi/4, pi/4, pi/2.
      const auto& cell = mesh.cell(static_cast<int>(c));
      std::vector<double> angles;
      for (int k = 0; k < 3; ++k) {
        const Vec2 p0 = mesh.vertex(cell[k]);
        const Vec2 u = mesh.vertex(cell[(k + 1) % 3]) - p0;
        const Vec2 w = mesh.vertex(cell[(k + 2) % 3]) - p0;
        angles.push_back(std::acos(u.dot(w) / (u.norm() * w.norm())));
      }
      std::sort(angles.begin(), angles.end());
      CHECK(angles[0] == doctest::Approx(M_PI / 4).epsilon(1e-12));
      CHECK(angles[1] == doctest::Approx(M_PI / 4).epsilon(1e-12));
      CHECK(angles[2] == doctest::Approx(M_PI / 2).epsilon(1e-12));
    }
    CHECK(area == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("edge structure") {
  const Mesh mesh = Mesh::unit_square_refined(2);

  // Canonical keying: ascending vertex pairs.
  for (std::size_t e = 0; e < mesh.n_edges(); ++e)
    CHECK(mesh.edge(static_cast<int>(e))[0] < mesh.edge(static_cast<int>(e))[1]);

  // Interior edges have exactly two adjacent cells, boundary edges one.
  std::vector<int> incidence(mesh.n_edges(), 0);
  for (std::size_t c = 0; c < mesh.n_cells(); ++c)
    for (int e : mesh.cell_edges(static_cast<int>(c))) ++incidence[e];
  for (std::size_t e = 0; e < mesh.n_edges(); ++e)
    CHECK(incidence[e] == (mesh.edge_on_boundary(static_cast<int>(e)) ? 1 : 2));

  // Boundary counts: 4 * 2^level vertices and edges on the unit square rim.
  std::size_t bverts = 0, bedges = 0;
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i)
    bverts += mesh.vertex_on_boundary(static_cast<int>(i)) ? 1 : 0;
  for (std::size_t i = 0; i < mesh.n_edges(); ++i)
    bedges += mesh.edge_on_boundary(static_cast<int>(i)) ? 1 : 0;
  CHECK(bverts == 16);
  CHECK(bedges == 16);

  // Boundary flags agree with the geometry.
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
    const Vec2& x = mesh.vertex(static_cast<int>(i));
    const bool on_rim = x[0] == 0.0 || x[0] == 1.0 || x[1] == 0.0 || x[1] == 1.0;
    CHECK(mesh.vertex_on_boundary(static_cast<int>(i)) == on_rim);
  }
}

TEST_CASE("cell queries") {
  const Mesh mesh = Mesh::unit_square_crossed();
  for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
    const auto& cell = mesh.cell(static_cast<int>(c));
    const Vec2 expected = (mesh.vertex(cell[0]) + mesh.vertex(cell[1]) +
                           mesh.vertex(cell[2])) /
                          3.0;
    CHECK((mesh.barycenter(static_cast<int>(c)) - expected).norm() <= 1e-15);
  }
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const auto& edge = mesh.edge(static_cast<int>(e));
    const Vec2 expected = 0.5 * (mesh.vertex(edge[0]) + mesh.vertex(edge[1]));
    CHECK((mesh.edge_midpoint(static_cast<int>(e)) - expected).norm() <= 1e-15);
  }

  // The affine map sends reference vertices onto the cell vertices.
  const AffineMap map = mesh.map(0);
  const auto& cell = mesh.cell(0);
  CHECK((map.B * Vec2(0, 0) + map.b - mesh.vertex(cell[0])).norm() <= 1e-15);
  CHECK((map.B * Vec2(1, 0) + map.b - mesh.vertex(cell[1])).norm() <= 1e-15);
  CHECK((map.B * Vec2(0, 1) + map.b - mesh.vertex(cell[2])).norm() <= 1e-15);
}

} // namespace
} // namespace varpstokes
