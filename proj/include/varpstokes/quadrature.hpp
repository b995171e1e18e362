#ifndef VARPSTOKES_QUADRATURE_HPP
#define VARPSTOKES_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "varpstokes/mesh.hpp"
#include "varpstokes/types.hpp"

namespace varpstokes {

struct QuadPoint {
  Vec2 xhat;
  double w;
};

// Symmetric rules on the reference triangle, exact for the stated total degree.
// Weights are positive and sum to the reference area 1/2.
struct QuadRule {
  int degree = 2;
  std::vector<QuadPoint> points;

  // Rules exist for degrees 2, 4, 6, 8; lower requests round up to the next
  // available degree. Throws std::invalid_argument above 8.
  static const QuadRule& triangle(int degree);
};

double integrate(const Mesh& mesh, int degree,
                 const std::function<double(const Vec2&)>& f);

} // namespace varpstokes

#endif
