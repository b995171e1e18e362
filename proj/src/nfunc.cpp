#include "varpstokes/nfunc.hpp"

#include <cmath>

#include "varpstokes/exponent.hpp"

namespace varpstokes {

Mat2 stress(const StressParams& sp, double p, const Mat2& a) {
  const Mat2 as = sym_part(a);
  const double n = as.norm();
  if (sp.delta == 0.0 && n == 0.0) return Mat2::Zero();
  return (sp.nu0 * std::pow(sp.delta + n, p - 2.0)) * as;
}

Mat2 tensor_F(double delta, double p, const Mat2& a) {
  const Mat2 as = sym_part(a);
  const double n = as.norm();
  if (delta == 0.0 && n == 0.0) return Mat2::Zero();
  return std::pow(delta + n, 0.5 * (p - 2.0)) * as;
}

Mat2 tensor_F_conj(double delta, double p, const Mat2& a) {
  const Mat2 as = sym_part(a);
  const double n = as.norm();
  if (delta == 0.0 && n == 0.0) return Mat2::Zero();
  const double pc = conjugate_exponent(p);
  return std::pow(std::pow(delta, p - 1.0) + n, 0.5 * (pc - 2.0)) * as;
}

double phi(double delta, double p, double r) {
  // (delta+s)^{p-2} s has antiderivative (delta+s)^p/p - delta (delta+s)^{p-1}/(p-1).
  const auto prim = [&](double s) {
    const double d = delta + s;
    return std::pow(d, p) / p - delta * std::pow(d, p - 1.0) / (p - 1.0);
  };
  return prim(r) - prim(0.0);
}

double phi_shifted(double delta, double p, double a, double r) {
  if (r == 0.0) return 0.0;
  return std::pow(delta + a + r, p - 2.0) * r * r;
}

double phi_shifted_conj(double delta, double p, double a, double r) {
  if (r == 0.0) return 0.0;
  const double pc = conjugate_exponent(p);
  return std::pow(std::pow(delta + a, p - 1.0) + r, pc - 2.0) * r * r;
}

StressDerivative stress_derivative(const StressParams& sp, double p, const Mat2& a) {
  StressDerivative d;
  d.a_sym = sym_part(a);
  const double n = d.a_sym.norm();
  d.weight_sym = sp.nu0 * std::pow(sp.delta + n, p - 2.0);
  d.weight_dyad =
      (n < 1e-14) ? 0.0
                  : sp.nu0 * (p - 2.0) * std::pow(sp.delta + n, p - 3.0) / n;
  return d;
}

} // namespace varpstokes
