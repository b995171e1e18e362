#include "varpstokes/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "varpstokes/assembly.hpp"
#include "varpstokes/errors.hpp"
#include "varpstokes/fem_space.hpp"
#include "varpstokes/mesh.hpp"
#include "varpstokes/mms.hpp"
#include "varpstokes/nfunc.hpp"
#include "varpstokes/quadrature.hpp"
#include "varpstokes/study.hpp"
#include "varpstokes/time_newton.hpp"

namespace varpstokes {

namespace {

std::string fmtd(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

Mat2 random_matrix(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat2 m;
  m << u(rng), u(rng), u(rng), u(rng);
  return m;
}

constexpr double kDeltas[3] = {0.0, 1e-4, 1.0};

// The four mutually equivalent distance measures around the stress
// nonlinearity: the monotonicity product, the squared flux distance, the
// shifted modular of the strain gap, and the shifted conjugate modular of the
// stress gap. All pairwise ratios stay inside a fixed bracket across the
// sampled exponent range.
CheckResult check_equivalence(unsigned long seed, int n_samples,
                              const std::string& name) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> up(1.5, 3.5);
  const double lo_bound = 1.0 / 64.0, hi_bound = 64.0;
  double lo = 1e300, hi = 0.0;
  int used = 0, bad = 0;
  for (int k = 0; k < n_samples; ++k) {
    const StressParams sp{1.0, kDeltas[k % 3]};
    const double p = up(rng);
    const Mat2 a = random_matrix(rng, 5.0);
    const Mat2 b = random_matrix(rng, 5.0);
    const Mat2 ds = stress(sp, p, a) - stress(sp, p, b);
    const Mat2 df = tensor_F(sp.delta, p, a) - tensor_F(sp.delta, p, b);
    const double q2 = df.squaredNorm();
    if (q2 < 1e-30) continue;
    const Mat2 as = sym_part(a), bs = sym_part(b);
    const double q[4] = {ddot(ds, a - b), q2,
                         phi_shifted(sp.delta, p, as.norm(), (as - bs).norm()),
                         phi_shifted_conj(sp.delta, p, as.norm(), ds.norm())};
    bool positive = true;
    for (double v : q) positive = positive && v > 0.0;
    if (!positive) {
      ++bad;
      continue;
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double r = q[i] / q[j];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    ++used;
  }
  const bool pass = bad == 0 && used > n_samples / 2 && lo >= lo_bound &&
                    hi <= hi_bound;
  std::ostringstream os;
  os << used << " samples, ratio range [" << fmtd(lo) << ", " << fmtd(hi)
     << "] within [1/64, 64], " << bad << " nonpositive";
  return {name, pass, os.str()};
}

CheckResult check_monotonicity(unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> up(1.5, 3.5);
  int bad = 0;
  double worst = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const StressParams sp{1.0, kDeltas[k % 3]};
    const double p = up(rng);
    const Mat2 a = random_matrix(rng, 5.0);
    const Mat2 b = random_matrix(rng, 5.0);
    const Mat2 ds = stress(sp, p, a) - stress(sp, p, b);
    const double lhs = ddot(ds, a - b);
    const double floor = -1e-12 * (1.0 + ds.norm()) * (a - b).norm();
    worst = std::min(worst, lhs);
    if (lhs < floor) ++bad;
  }
  std::ostringstream os;
  os << "most negative product " << fmtd(worst) << ", " << bad
     << " below rounding floor";
  return {"stress_monotonicity", bad == 0, os.str()};
}

// The closed-form conjugate of the shifted N-function is compared against the
// conjugate computed numerically as sup_s (r s - phi_a(s)).
CheckResult check_legendre(unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> up(1.5, 3.5);
  std::uniform_real_distribution<double> ua(0.0, 10.0);
  std::uniform_real_distribution<double> ur(1e-3, 10.0);
  double lo = 1e300, hi = 0.0;
  int bad = 0;
  for (int k = 0; k < 2000; ++k) {
    const double delta = kDeltas[k % 3];
    const double p = up(rng);
    const double a = ua(rng);
    const double r = ur(rng);
    const auto f = [&](double s) { return r * s - phi_shifted(delta, p, a, s); };
    double s_hi = 1.0;
    while (f(2.0 * s_hi) > f(s_hi) && s_hi < 1e30) s_hi *= 2.0;
    double left = 0.0, right = 2.0 * s_hi;
    for (int it = 0; it < 100; ++it) {
      const double m1 = left + (right - left) / 3.0;
      const double m2 = right - (right - left) / 3.0;
      if (f(m1) < f(m2))
        left = m1;
      else
        right = m2;
    }
    const double numeric = f(0.5 * (left + right));
    const double closed = phi_shifted_conj(delta, p, a, r);
    if (!(numeric > 0.0) || !(closed > 0.0)) {
      ++bad;
      continue;
    }
    const double ratio = numeric / closed;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    if (ratio < 1.0 / 16.0 || ratio > 16.0) ++bad;
  }
  std::ostringstream os;
  os << "sup-form vs closed-form ratio range [" << fmtd(lo) << ", " << fmtd(hi)
     << "] within [1/16, 16]";
  return {"shifted_conjugate_legendre", bad == 0, os.str()};
}

// Continuity of the flux in the exponent argument: perturbing p by dp moves
// F(p, A) by at most O(|dp|) with a polynomial weight in |A|.
CheckResult check_exponent_sensitivity(unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> up(2.0, 3.4);
  std::uniform_real_distribution<double> ud(0.0, 0.1);
  double worst = 0.0;
  int bad = 0;
  for (int k = 0; k < 20000; ++k) {
    const double delta = kDeltas[k % 3];
    const double p1 = up(rng);
    const double p2 = p1 + ud(rng);
    const Mat2 a = random_matrix(rng, 5.0);
    const double as = sym_part(a).norm();
    const double lhs =
        (tensor_F(delta, p1, a) - tensor_F(delta, p2, a)).squaredNorm();
    const double bound =
        1000.0 * (p2 - p1) * (p2 - p1) * std::pow(1.0 + as, 1.2 * p2) + 1e-30;
    worst = std::max(worst, lhs / bound);
    if (lhs > bound) ++bad;
  }
  std::ostringstream os;
  os << "max |F(p1)-F(p2)|^2 over bound: " << fmtd(worst);
  return {"flux_exponent_sensitivity", bad == 0, os.str()};
}

CheckResult check_stress_derivative(unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> up(1.5, 3.5);
  double worst = 0.0;
  int bad = 0, used = 0;
  for (int k = 0; k < 2000; ++k) {
    const StressParams sp{1.0, kDeltas[(k + 1) % 3]};
    const double p = up(rng);
    const Mat2 a = random_matrix(rng, 3.0);
    const Mat2 b = random_matrix(rng, 1.0);
    if (sp.delta + sym_part(a).norm() < 0.05) continue; // FD needs smoothness
    const double h = 1e-6 * (1.0 + a.norm());
    const Mat2 fd = (stress(sp, p, a + h * b) - stress(sp, p, a - h * b)) / (2.0 * h);
    const Mat2 an = stress_derivative(sp, p, a).apply(b);
    const double rel = (fd - an).norm() / (1.0 + fd.norm() + an.norm());
    worst = std::max(worst, rel);
    if (rel > 1e-5) ++bad;
    ++used;
  }
  std::ostringstream os;
  os << used << " samples, max relative FD mismatch " << fmtd(worst);
  return {"stress_derivative_fd", bad == 0, os.str()};
}

// Finite-difference oracles for the manufactured fields over the whole study
// grid: velocity gradient and time derivative, exponent gradient and time
// derivative, sampled away from the origin.
CheckResult check_manufactured_fields(unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.05, 0.95);
  std::uniform_real_distribution<double> ut(0.01, 0.1);
  const double pms1[5] = {1.5, 1.75, 2.0, 2.25, 2.5};
  const double pms2[3] = {2.0, 2.25, 2.5};
  const double alphas[3] = {1.0, 0.75, 0.5};
  const double hx = 1e-6, ht = 1e-7;
  double worst = 0.0;
  int bad = 0;
  long long points = 0;
  const auto margin = [&](double err, double scale) {
    const double tol = 1e-12 + 1e-5 * scale;
    worst = std::max(worst, err / tol);
    if (err > tol) ++bad;
  };
  for (int pressure_case = 1; pressure_case <= 2; ++pressure_case) {
    const double* pms = pressure_case == 1 ? pms1 : pms2;
    const int n_pm = pressure_case == 1 ? 5 : 3;
    for (int ip = 0; ip < n_pm; ++ip)
      for (double alpha : alphas) {
        MmsParams mp;
        mp.p_minus = pms[ip];
        mp.p_plus = pms[ip] + 1.0;
        mp.alpha = mp.beta = mp.gamma = alpha;
        mp.pressure_case = pressure_case;
        mp.T = 0.1;
        const VarExpSolution sol(mp);
        const ExponentField& field = sol.exponent_field();
        for (int k = 0; k < 1000; ++k) {
          const Vec2 x(ux(rng), ux(rng));
          const double t = ut(rng);
          Mat2 grad_fd;
          for (int j = 0; j < 2; ++j) {
            Vec2 xp = x, xm = x;
            xp[j] += hx;
            xm[j] -= hx;
            grad_fd.col(j) = (sol.velocity(t, xp) - sol.velocity(t, xm)) / (2 * hx);
          }
          const Mat2 grad = sol.velocity_gradient(t, x);
          margin((grad_fd - grad).norm(), grad.norm() + grad_fd.norm());

          const Vec2 dtv_fd =
              (sol.velocity(t + ht, x) - sol.velocity(t - ht, x)) / (2 * ht);
          const Vec2 dtv = sol.velocity_time_derivative(t, x);
          margin((dtv_fd - dtv).norm(), dtv.norm() + dtv_fd.norm());

          Vec2 gp_fd;
          for (int j = 0; j < 2; ++j) {
            Vec2 xp = x, xm = x;
            xp[j] += hx;
            xm[j] -= hx;
            gp_fd[j] = (field(t, xp) - field(t, xm)) / (2 * hx);
          }
          const Vec2 gp = field.gradient(t, x);
          margin((gp_fd - gp).norm(), gp.norm() + gp_fd.norm());

          const double dtp_fd = (field(t + ht, x) - field(t - ht, x)) / (2 * ht);
          const double dtp = field.time_derivative(t, x);
          margin(std::abs(dtp_fd - dtp), std::abs(dtp) + std::abs(dtp_fd));
          ++points;
        }
      }
  }
  std::ostringstream os;
  os << points << " points over 24 parameter sets, max error/tolerance "
     << fmtd(worst);
  return {"manufactured_fields_fd", bad == 0, os.str()};
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

CheckResult check_quadrature(unsigned long) {
  double worst = 0.0;
  int bad = 0;
  for (int degree : {2, 4, 6, 8}) {
    const QuadRule& rule = QuadRule::triangle(degree);
    double wsum = 0.0;
    for (const QuadPoint& qp : rule.points) {
      if (!(qp.w > 0.0)) ++bad;
      wsum += qp.w;
    }
    if (std::abs(wsum - 0.5) > 1e-15) ++bad;
    for (int i = 0; i + 0 <= degree; ++i)
      for (int j = 0; i + j <= degree; ++j) {
        double approx = 0.0;
        for (const QuadPoint& qp : rule.points)
          approx += qp.w * std::pow(qp.xhat.x(), i) * std::pow(qp.xhat.y(), j);
        const double exact = factorial(i) * factorial(j) / factorial(i + j + 2);
        const double err = std::abs(approx - exact);
        worst = std::max(worst, err);
        if (err > 1e-14) ++bad;
      }
  }
  std::ostringstream os;
  os << "monomials up to each rule degree, max defect " << fmtd(worst);
  return {"quadrature_exactness", bad == 0, os.str()};
}

CheckResult check_mesh(unsigned long) {
  int bad = 0;
  std::ostringstream os;
  Mesh mesh = Mesh::unit_square_crossed();
  std::size_t v = 5, e = 8, c = 4;
  for (int level = 0; level <= 5; ++level) {
    if (level > 0) {
      const std::size_t vn = v + e, en = 2 * e + 3 * c, cn = 4 * c;
      mesh = mesh.refined();
      v = vn;
      e = en;
      c = cn;
    }
    if (mesh.n_vertices() != v || mesh.n_edges() != e || mesh.n_cells() != c)
      ++bad;
    if (static_cast<long>(mesh.n_vertices()) - static_cast<long>(mesh.n_edges()) +
            static_cast<long>(mesh.n_cells()) != 1)
      ++bad;
    if (std::abs(mesh.h() - std::pow(0.5, level)) > 1e-15) ++bad;
    std::size_t bverts = 0, bedges = 0;
    for (std::size_t i = 0; i < mesh.n_vertices(); ++i)
      bverts += mesh.vertex_on_boundary(static_cast<int>(i)) ? 1 : 0;
    for (std::size_t i = 0; i < mesh.n_edges(); ++i)
      bedges += mesh.edge_on_boundary(static_cast<int>(i)) ? 1 : 0;
    const std::size_t expected = std::size_t{4} << level;
    if (bverts != expected || bedges != expected) ++bad;
    for (std::size_t ci = 0; ci < mesh.n_cells(); ++ci) {
      const AffineMap map = mesh.map(static_cast<int>(ci));
      if (!(map.det > 0.0)) ++bad;
      const auto& cell = mesh.cell(static_cast<int>(ci));
      double angles[3];
      for (int k = 0; k < 3; ++k) {
        const Vec2 p0 = mesh.vertex(cell[k]);
        const Vec2 u = mesh.vertex(cell[(k + 1) % 3]) - p0;
        const Vec2 w = mesh.vertex(cell[(k + 2) % 3]) - p0;
        angles[k] = std::acos(u.dot(w) / (u.norm() * w.norm()));
      }
      std::sort(angles, angles + 3);
      const double quarter = std::acos(0.0) / 2.0; // pi/4
      if (std::abs(angles[0] - quarter) > 1e-9 ||
          std::abs(angles[1] - quarter) > 1e-9 ||
          std::abs(angles[2] - 2.0 * quarter) > 1e-9)
        ++bad;
    }
  }
  os << "levels 0..5: counts, Euler number, h halving, right isoceles cells";
  return {"mesh_invariants", bad == 0, os.str()};
}

// Summation-by-parts identity of the backward difference quotient:
//   sum_i tau (d f_i, f_i) = ||f_n||^2/2 - ||f_m||^2/2 + sum_i tau^2/2 ||d f_i||^2.
CheckResult check_summation_by_parts(unsigned long seed) {
  std::mt19937_64 rng(seed);
  const Mesh mesh = Mesh::unit_square_refined(2);
  const TaylorHoodSpace space(mesh);
  const SparseMatrix mass = assemble_scalar_mass(space);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n_nodes = 8;
  const double tau = 0.0125;
  std::vector<Vector> f(n_nodes + 1, Vector(space.n_scalar()));
  for (Vector& fi : f)
    for (int i = 0; i < fi.size(); ++i) fi[i] = u(rng);
  const auto ip = [&](const Vector& x, const Vector& y) {
    return x.dot(mass * y);
  };
  double worst = 0.0;
  const int ranges[4][2] = {{0, 8}, {2, 5}, {1, 7}, {3, 4}};
  for (const auto& range : ranges) {
    const int m = range[0], n = range[1];
    double lhs = 0.0, corr = 0.0;
    for (int i = m + 1; i <= n; ++i) {
      const Vector d = (f[i] - f[i - 1]) / tau;
      lhs += tau * ip(d, f[i]);
      corr += 0.5 * tau * tau * ip(d, d);
    }
    const double rhs = 0.5 * ip(f[n], f[n]) - 0.5 * ip(f[m], f[m]) + corr;
    worst = std::max(worst,
                     std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs) + std::abs(rhs)));
  }
  std::ostringstream os;
  os << "max relative defect " << fmtd(worst);
  return {"summation_by_parts_identity", worst <= 1e-12, os.str()};
}

CheckResult check_determinism(unsigned long) {
  StudyConfig cfg;
  cfg.p_minus = 2.25;
  cfg.alpha = 0.75;
  cfg.max_level = 2;
  cfg.finalize();
  const StudyReport r1 = run_study(cfg);
  const StudyReport r2 = run_study(cfg);
  int bad = 0;
  if (r1.rows.size() != r2.rows.size()) ++bad;
  for (std::size_t i = 0; i < r1.rows.size() && i < r2.rows.size(); ++i) {
    const ErrorSet& e1 = r1.rows[i].err;
    const ErrorSet& e2 = r2.rows[i].err;
    if (e1.e_F != e2.e_F || e1.e_Fstar != e2.e_Fstar ||
        e1.e_phistar != e2.e_phistar || e1.e_L2 != e2.e_L2)
      ++bad;
  }
  const Mesh mesh = Mesh::unit_square_refined(1);
  const TaylorHoodSpace space(mesh);
  const VarExpSolution sol(mms_params_from(cfg));
  const TimeGrid grid = TimeGrid::for_level(cfg.T, 1);
  const QuadRule& rule = QuadRule::triangle(cfg.quad_degree_assembly);
  const SlabHistory h1 = run_time_loop(space, sol, grid, rule, cfg.newton);
  const SlabHistory h2 = run_time_loop(space, sol, grid, rule, cfg.newton);
  const auto differs = [](const Vector& x, const Vector& y) {
    return x.size() != y.size() || (x.array() != y.array()).any();
  };
  for (int m = 0; m <= grid.M; ++m)
    if (differs(h1.velocity[m], h2.velocity[m])) ++bad;
  for (int m = 0; m < grid.M; ++m)
    if (differs(h1.pressure[m], h2.pressure[m]) ||
        h1.multiplier[m] != h2.multiplier[m])
      ++bad;
  return {"study_determinism", bad == 0,
          bad == 0 ? "repeated runs agree bitwise" : "repeated runs differ"};
}

} // namespace

std::vector<CheckResult> run_selfchecks(unsigned long seed) {
  std::vector<CheckResult> results;
  results.push_back(
      check_equivalence(seed, 10000, "stress_flux_equivalence_10k"));
  results.push_back(
      check_equivalence(seed + 1, 100000, "stress_flux_equivalence_100k"));
  results.push_back(check_monotonicity(seed + 2));
  results.push_back(check_legendre(seed + 3));
  results.push_back(check_exponent_sensitivity(seed + 4));
  results.push_back(check_stress_derivative(seed + 5));
  results.push_back(check_manufactured_fields(seed + 6));
  results.push_back(check_quadrature(seed + 7));
  results.push_back(check_mesh(seed + 8));
  results.push_back(check_summation_by_parts(seed + 9));
  results.push_back(check_determinism(seed + 10));
  return results;
}

} // namespace varpstokes
