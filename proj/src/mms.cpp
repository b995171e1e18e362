#include "varpstokes/mms.hpp"

#include <cmath>

#include "varpstokes/mesh.hpp"
#include "varpstokes/quadrature.hpp"

namespace varpstokes {

Vec2 ManufacturedSolution::source(double t, const Vec2& x) const {
  return velocity_time_derivative(t, x);
}

Mat2 ManufacturedSolution::stress_source(double t, const Vec2& x) const {
  const Mat2 s = stress(stress_params(), exponent_at(t, x), velocity_gradient(t, x));
  return s - pressure(t, x) * Mat2::Identity();
}

VarExpSolution::VarExpSolution(const MmsParams& params)
    : params_(params),
      field_{params.p_minus, params.p_plus, params.alpha} {}

double VarExpSolution::rho_v(double t, const Vec2& x) const {
  return 2.0 * (params_.beta - 1.0) / field_(t, x) + params_.stress.delta;
}

double VarExpSolution::rho_q(double t, const Vec2& x) const {
  const double p = field_(t, x);
  if (params_.pressure_case == 1)
    return params_.gamma - 2.0 / conjugate_exponent(p) + params_.stress.delta;
  return rho_v(t, x) * (p - 2.0) / 2.0 + params_.gamma + 0.01;
}

Vec2 VarExpSolution::velocity(double t, const Vec2& x) const {
  const double r = x.norm();
  if (r < 1e-14) return Vec2::Zero(); // limit value; 1 + rho_v > 0
  const double s = std::pow(r, rho_v(t, x));
  return (0.1 * t * s) * Vec2(x[1], -x[0]);
}

Mat2 VarExpSolution::velocity_gradient(double t, const Vec2& x) const {
  const double r = x.norm();
  const double p = field_(t, x);
  const double rho = 2.0 * (params_.beta - 1.0) / p + params_.stress.delta;
  const Vec2 grad_rho = (-2.0 * (params_.beta - 1.0) / (p * p)) * field_.gradient(t, x);
  const double s = std::pow(r, rho);
  const Vec2 grad_s = s * (rho / (r * r) * x + std::log(r) * grad_rho);
  Mat2 w_grad;
  w_grad << 0.0, 1.0, -1.0, 0.0;
  const Vec2 w(x[1], -x[0]);
  return 0.1 * t * (s * w_grad + w * grad_s.transpose());
}

Vec2 VarExpSolution::velocity_time_derivative(double t, const Vec2& x) const {
  const double r = x.norm();
  if (r < 1e-14) return Vec2::Zero();
  const double p = field_(t, x);
  const double rho = 2.0 * (params_.beta - 1.0) / p + params_.stress.delta;
  const double drho_dt =
      (-2.0 * (params_.beta - 1.0) / (p * p)) * field_.time_derivative(t, x);
  const double s = std::pow(r, rho);
  return (0.1 * s * (1.0 + t * std::log(r) * drho_dt)) * Vec2(x[1], -x[0]);
}

double VarExpSolution::pressure(double t, const Vec2& x) const {
  if (t == 0.0) return 0.0;
  return 100.0 * t * (std::pow(x.norm(), rho_q(t, x)) - pressure_mean_term(t));
}

double VarExpSolution::exponent_at(double t, const Vec2& x) const {
  return field_(t, x);
}

double VarExpSolution::pressure_mean_term(double t) const {
  const auto it = mean_cache_.find(t);
  if (it != mean_cache_.end()) return it->second;
  // |Omega| = 1, so the integral is the mean.
  static const Mesh& ref_mesh = *new Mesh(Mesh::unit_square_refined(6));
  const double mean = integrate(ref_mesh, 8, [&](const Vec2& x) {
    return std::pow(x.norm(), rho_q(t, x));
  });
  mean_cache_.emplace(t, mean);
  return mean;
}

} // namespace varpstokes
