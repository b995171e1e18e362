#ifndef VARPSTOKES_NFUNC_HPP
#define VARPSTOKES_NFUNC_HPP

#include "varpstokes/types.hpp"

namespace varpstokes {

struct StressParams {
  double nu0 = 1.0;    // viscosity scale
  double delta = 1e-4; // regularization shift, >= 0
};

// Nonlinear viscous stress S(A) = nu0 (delta + |A^sym|)^{p-2} A^sym.
// Zero tensor when delta == 0 and A^sym == 0 (continuous extension).
Mat2 stress(const StressParams& sp, double p, const Mat2& a);

// Natural-distance flux F(A) = (delta + |A^sym|)^{(p-2)/2} A^sym.
Mat2 tensor_F(double delta, double p, const Mat2& a);

// Conjugate-side flux F*(A) = (delta^{p-1} + |A^sym|)^{(p'-2)/2} A^sym, p' = p/(p-1).
Mat2 tensor_F_conj(double delta, double p, const Mat2& a);

// phi(r) = integral_0^r (delta + s)^{p-2} s ds, evaluated in closed form.
double phi(double delta, double p, double r);

// Shifted N-function surrogate phi_a(r) ~ (delta + a + r)^{p-2} r^2.
double phi_shifted(double delta, double p, double a, double r);

// Conjugate of the shifted surrogate: ((delta + a)^{p-1} + r)^{p'-2} r^2.
double phi_shifted_conj(double delta, double p, double a, double r);

// Derivative of A -> S(A), stored as
//   D S(A)[B] = weight_sym * B^sym + weight_dyad * (A^sym : B^sym) A^sym.
// weight_dyad is zeroed for |A^sym| < 1e-14 to keep the map finite there.
struct StressDerivative {
  double weight_sym = 0.0;
  double weight_dyad = 0.0;
  Mat2 a_sym = Mat2::Zero();

  Mat2 apply(const Mat2& b) const {
    const Mat2 bs = sym_part(b);
    return weight_sym * bs + (weight_dyad * ddot(a_sym, bs)) * a_sym;
  }
};

StressDerivative stress_derivative(const StressParams& sp, double p, const Mat2& a);

} // namespace varpstokes

#endif
