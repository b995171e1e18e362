#ifndef VARPSTOKES_EXPONENT_HPP
#define VARPSTOKES_EXPONENT_HPP

#include "varpstokes/types.hpp"

namespace varpstokes {

inline double conjugate_exponent(double p) { return p / (p - 1.0); }

// Space-time variable exponent on the unit square:
//   p(t,x) = (1 - |x|^alpha / 2^{alpha/2}) p_plus + (|x|^alpha / 2^{alpha/2}) (p_minus + t).
// p(t,0) = p_plus, p(t,corner (1,1)) = p_minus + t; Hoelder-continuous in x with exponent alpha.
// p_minus == p_plus selects the constant field p == p_minus (gradient and time derivative vanish).
struct ExponentField {
  double p_minus = 2.0;
  double p_plus = 3.0;
  double alpha = 1.0;

  double operator()(double t, const Vec2& x) const;

  // Spatial gradient; throws std::domain_error at the origin when alpha < 2.
  Vec2 gradient(double t, const Vec2& x) const;

  double time_derivative(double t, const Vec2& x) const;
};

} // namespace varpstokes

#endif
