#include "varpstokes/exponent.hpp"

#include <cmath>
#include <stdexcept>

namespace varpstokes {

double ExponentField::operator()(double t, const Vec2& x) const {
  if (p_minus == p_plus) return p_minus;
  const double lam = std::pow(x.norm(), alpha) / std::pow(2.0, 0.5 * alpha);
  const double p = (1.0 - lam) * p_plus + lam * (p_minus + t);
  if (p < p_minus - 1e-12 || p > p_plus + std::max(t, 0.0) + 1e-12)
    throw std::logic_error("exponent value out of range");
  return p;
}

Vec2 ExponentField::gradient(double t, const Vec2& x) const {
  if (p_minus == p_plus) return Vec2::Zero();
  const double r = x.norm();
  if (r < 1e-12) {
    if (alpha < 2.0)
      throw std::domain_error("exponent gradient singular at the origin");
    return Vec2::Zero();
  }
  const double scale = alpha * std::pow(r, alpha - 2.0) /
                       std::pow(2.0, 0.5 * alpha) * ((p_minus + t) - p_plus);
  return scale * x;
}

double ExponentField::time_derivative(double t, const Vec2& x) const {
  (void)t;
  if (p_minus == p_plus) return 0.0;
  return std::pow(x.norm(), alpha) / std::pow(2.0, 0.5 * alpha);
}

} // namespace varpstokes
