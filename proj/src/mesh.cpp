#include "varpstokes/mesh.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace varpstokes {

namespace {

std::array<std::array<int, 2>, 3> local_edges(const std::array<int, 3>& c) {
  return {{{c[0], c[1]}, {c[1], c[2]}, {c[2], c[0]}}};
}

} // namespace

void Mesh::build_edges() {
  edges_.clear();
  cell_edges_.assign(cells_.size(), {});
  std::map<std::pair<int, int>, int> index;
  std::vector<int> adjacency;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto loc = local_edges(cells_[c]);
    for (int k = 0; k < 3; ++k) {
      const auto key = std::minmax(loc[k][0], loc[k][1]);
      auto [it, inserted] = index.try_emplace(key, static_cast<int>(edges_.size()));
      if (inserted) {
        edges_.push_back({key.first, key.second});
        adjacency.push_back(0);
      }
      cell_edges_[c][k] = it->second;
      ++adjacency[it->second];
    }
  }
  edge_boundary_.resize(edges_.size());
  vertex_boundary_.assign(vertices_.size(), false);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    assert(adjacency[e] == 1 || adjacency[e] == 2);
    edge_boundary_[e] = (adjacency[e] == 1);
    if (edge_boundary_[e]) {
      vertex_boundary_[edges_[e][0]] = true;
      vertex_boundary_[edges_[e][1]] = true;
    }
  }
  h_ = 0.0;
  for (const auto& e : edges_)
    h_ = std::max(h_, (vertices_[e[0]] - vertices_[e[1]]).norm());
}

Mesh Mesh::unit_square_crossed() {
  Mesh m;
  m.level_ = 0;
  m.vertices_ = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1), Vec2(0.5, 0.5)};
  m.cells_ = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  m.build_edges();
  return m;
}

Mesh Mesh::unit_square_refined(int level) {
  if (level < 0) throw std::invalid_argument("mesh level must be >= 0");
  Mesh m = unit_square_crossed();
  for (int i = 0; i < level; ++i) m = m.refined();
  return m;
}

Mesh Mesh::refined() const {
  Mesh fine;
  fine.level_ = level_ + 1;
  fine.vertices_ = vertices_;
  fine.vertices_.reserve(vertices_.size() + edges_.size());
  for (const auto& e : edges_)
    fine.vertices_.push_back(0.5 * (vertices_[e[0]] + vertices_[e[1]]));

  const int v_old = static_cast<int>(vertices_.size());
  fine.cells_.reserve(4 * cells_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& [a, b, d] = cells_[c];
    const int mab = v_old + cell_edges_[c][0];
    const int mbd = v_old + cell_edges_[c][1];
    const int mda = v_old + cell_edges_[c][2];
    fine.cells_.push_back({a, mab, mda});
    fine.cells_.push_back({b, mbd, mab});
    fine.cells_.push_back({d, mda, mbd});
    fine.cells_.push_back({mab, mbd, mda});
  }
  fine.build_edges();
  return fine;
}

AffineMap Mesh::map(int c) const {
  const auto& [a, b, d] = cells_[c];
  AffineMap m;
  m.b = vertices_[a];
  m.B.col(0) = vertices_[b] - vertices_[a];
  m.B.col(1) = vertices_[d] - vertices_[a];
  m.det = m.B.determinant();
  assert(m.det > 0.0);
  m.B_inv_t = m.B.inverse().transpose();
  return m;
}

Vec2 Mesh::barycenter(int c) const {
  const auto& [a, b, d] = cells_[c];
  return (vertices_[a] + vertices_[b] + vertices_[d]) / 3.0;
}

Vec2 Mesh::edge_midpoint(int e) const {
  return 0.5 * (vertices_[edges_[e][0]] + vertices_[edges_[e][1]]);
}

} // namespace varpstokes
