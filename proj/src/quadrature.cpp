#include "varpstokes/quadrature.hpp"

#include <stdexcept>

namespace varpstokes {

namespace {

// Barycentric (l1,l2,l3) maps to reference coordinates (l2,l3).
void push_orbit1(std::vector<QuadPoint>& pts, double w) {
  pts.push_back({Vec2(1.0 / 3.0, 1.0 / 3.0), w});
}

void push_orbit3(std::vector<QuadPoint>& pts, double a, double w) {
  const double c = 1.0 - 2.0 * a;
  pts.push_back({Vec2(a, a), w});
  pts.push_back({Vec2(c, a), w});
  pts.push_back({Vec2(a, c), w});
}

void push_orbit6(std::vector<QuadPoint>& pts, double a, double b, double w) {
  const double c = 1.0 - a - b;
  const double l[6][3] = {{c, a, b}, {c, b, a}, {a, c, b},
                          {b, c, a}, {a, b, c}, {b, a, c}};
  for (const auto& p : l) pts.push_back({Vec2(p[1], p[2]), w});
}

QuadRule make_rule(int degree) {
  // Symmetric orbit rules. The orbit parameters solve the monomial moment
  // equations exactly; the constants below carry 17 significant digits so the
  // nearest doubles keep every moment defect under a few 1e-17. Weights sum
  // to the reference-triangle area 1/2.
  QuadRule r;
  r.degree = degree;
  auto& p = r.points;
  switch (degree) {
    case 2:
      push_orbit3(p, 1.0 / 6.0, 1.0 / 6.0);
      break;
    case 4:
      push_orbit3(p, 0.44594849091596489, 0.11169079483900573);
      push_orbit3(p, 0.091576213509770743, 0.054975871827660934);
      break;
    case 6:
      push_orbit3(p, 0.063089014491502228, 0.025422453185103408);
      push_orbit3(p, 0.24928674517091042, 0.058393137863189683);
      push_orbit6(p, 0.31035245103378441, 0.053145049844816947,
                  0.041425537809186788);
      break;
    case 8:
      push_orbit1(p, 0.072157803838893584);
      push_orbit3(p, 0.45929258829272316, 0.047545817133642312);
      push_orbit3(p, 0.17056930775176021, 0.051608685267359125);
      push_orbit3(p, 0.050547228317030975, 0.016229248811599040);
      push_orbit6(p, 0.26311282963463811, 0.72849239295540428,
                  0.013615157087217497);
      break;
    default:
      throw std::invalid_argument("no triangle rule for this degree");
  }
  return r;
}

} // namespace

const QuadRule& QuadRule::triangle(int degree) {
  if (degree < 1 || degree > 8)
    throw std::invalid_argument("triangle rules cover degrees 1..8");
  static const QuadRule rules[4] = {make_rule(2), make_rule(4), make_rule(6),
                                    make_rule(8)};
  const int idx = (degree <= 2) ? 0 : (degree + 1) / 2 - 1;
  return rules[idx];
}

double integrate(const Mesh& mesh, int degree,
                 const std::function<double(const Vec2&)>& f) {
  const QuadRule& rule = QuadRule::triangle(degree);
  double sum = 0.0;
  for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap m = mesh.map(static_cast<int>(c));
    for (const auto& q : rule.points)
      sum += q.w * m.det * f(m.B * q.xhat + m.b);
  }
  return sum;
}

} // namespace varpstokes
