#ifndef VARPSTOKES_MESH_HPP
#define VARPSTOKES_MESH_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "varpstokes/types.hpp"

namespace varpstokes {

// x = B xhat + b maps the reference triangle {(0,0),(1,0),(0,1)} onto a cell.
struct AffineMap {
  Mat2 B;
  Mat2 B_inv_t; // transforms reference gradients to physical ones
  Vec2 b;
  double det; // = 2 * cell area, positive for ccw cells
};

// Conforming triangulation of the unit square. Level 0 is the square cut by both
// diagonals (5 vertices, 8 edges, 4 cells); each refinement splits every cell into
// 4 congruent children through the edge midpoints. All cells are ccw; edges are
// keyed by ascending vertex pair and numbered in first-encounter order.
class Mesh {
public:
  static Mesh unit_square_crossed();
  static Mesh unit_square_refined(int level); // level 0 == unit_square_crossed()

  Mesh refined() const;

  int level() const { return level_; }
  double h() const { return h_; } // longest edge, exactly 2^-level here

  std::size_t n_vertices() const { return vertices_.size(); }
  std::size_t n_edges() const { return edges_.size(); }
  std::size_t n_cells() const { return cells_.size(); }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& cell(int c) const { return cells_[c]; }
  // Edge ids for the local edges (v0,v1), (v1,v2), (v2,v0) of cell c.
  const std::array<int, 3>& cell_edges(int c) const { return cell_edges_[c]; }
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }

  bool vertex_on_boundary(int v) const { return vertex_boundary_[v]; }
  bool edge_on_boundary(int e) const { return edge_boundary_[e]; }

  AffineMap map(int c) const;
  Vec2 barycenter(int c) const;
  Vec2 edge_midpoint(int e) const;

private:
  void build_edges();

  int level_ = 0;
  double h_ = 1.0;
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> cell_edges_;
  std::vector<bool> vertex_boundary_;
  std::vector<bool> edge_boundary_;
};

} // namespace varpstokes

#endif
