#ifndef VARPSTOKES_MMS_HPP
#define VARPSTOKES_MMS_HPP

#include <map>

#include "varpstokes/exponent.hpp"
#include "varpstokes/nfunc.hpp"
#include "varpstokes/types.hpp"

namespace varpstokes {

// Closed-form space-time fields driving a manufactured-solution study. The
// forcing pair below makes (velocity, pressure) solve the weak system
//   (d_t v, phi) + (S(Dv), Dphi) - (q, div phi) = (g, phi) + (G, Dphi)
// exactly: g = d_t v and G = S(p(t,x), Dv) - q I.
class ManufacturedSolution {
public:
  virtual ~ManufacturedSolution() = default;

  virtual Vec2 velocity(double t, const Vec2& x) const = 0;
  virtual Mat2 velocity_gradient(double t, const Vec2& x) const = 0; // full grad
  virtual Vec2 velocity_time_derivative(double t, const Vec2& x) const = 0;
  virtual double pressure(double t, const Vec2& x) const = 0;
  virtual double exponent_at(double t, const Vec2& x) const = 0;
  virtual const StressParams& stress_params() const = 0;

  Vec2 source(double t, const Vec2& x) const; // g
  Mat2 stress_source(double t, const Vec2& x) const; // G (symmetric)
};

struct MmsParams {
  double p_minus = 2.0;
  double p_plus = 3.0;
  double alpha = 1.0;
  double beta = 1.0;  // velocity regularity knob
  double gamma = 1.0; // pressure regularity knob
  int pressure_case = 1;
  StressParams stress;
  double T = 0.1;
};

// velocity = 0.1 t |x|^{rho_v} (x2, -x1),  rho_v = 2(beta-1)/p(t,x) + delta
// pressure = 100 t (|x|^{rho_q} - mean),   case 1: rho_q = gamma - 2/p'(t,x) + delta
//                                          case 2: rho_q = rho_v (p-2)/2 + gamma + 0.01
// The domain mean of |x|^{rho_q(t,.)} is integrated once per time value on a
// fixed fine reference mesh and cached (single-threaded use).
class VarExpSolution : public ManufacturedSolution {
public:
  explicit VarExpSolution(const MmsParams& params);

  Vec2 velocity(double t, const Vec2& x) const override;
  Mat2 velocity_gradient(double t, const Vec2& x) const override;
  Vec2 velocity_time_derivative(double t, const Vec2& x) const override;
  double pressure(double t, const Vec2& x) const override;
  double exponent_at(double t, const Vec2& x) const override;
  const StressParams& stress_params() const override { return params_.stress; }

  const ExponentField& exponent_field() const { return field_; }
  const MmsParams& params() const { return params_; }

  double rho_v(double t, const Vec2& x) const;
  double rho_q(double t, const Vec2& x) const;
  double pressure_mean_term(double t) const; // cached mean of |x|^{rho_q(t,.)}

private:
  MmsParams params_;
  ExponentField field_;
  mutable std::map<double, double> mean_cache_;
};

} // namespace varpstokes

#endif
