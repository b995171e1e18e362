#include "varpstokes/errors.hpp"

#include <cmath>
#include <limits>

#include "varpstokes/assembly.hpp"

namespace varpstokes {

ErrorSet compute_errors(const TaylorHoodSpace& space,
                        const ManufacturedSolution& data,
                        const SlabHistory& history, int quad_degree) {
  const Mesh& mesh = space.mesh();
  const QuadRule& rule = QuadRule::triangle(quad_degree);
  const StressParams& sp = data.stress_params();
  const int ns = space.n_scalar();
  const double tau = history.grid.tau();

  std::vector<std::array<double, 6>> p2_val;
  std::vector<std::array<Vec2, 6>> p2_grad;
  std::vector<std::array<double, 3>> p1_val;
  for (const auto& q : rule.points) {
    p2_val.push_back(ScalarP2::values(q.xhat));
    p2_grad.push_back(ScalarP2::gradients(q.xhat));
    p1_val.push_back(ScalarP1::values(q.xhat));
  }

  double acc_f = 0.0, acc_fstar = 0.0, acc_phistar = 0.0;
  double linf_l2 = 0.0;

  for (int m = 0; m <= history.grid.M; ++m) {
    const double t = history.grid.node(m);
    const Vector& v = history.velocity[m];
    const Vector* q_h = (m >= 1) ? &history.pressure[m - 1] : nullptr;
    const std::vector<double> p_cell =
        (m >= 1) ? freeze_exponent(mesh, t, data) : std::vector<double>{};

    double l2sq = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
      const AffineMap map = mesh.map(static_cast<int>(c));
      const auto nodes = space.cell_scalar_nodes(static_cast<int>(c));
      const auto& verts = mesh.cell(static_cast<int>(c));

      for (std::size_t qi = 0; qi < rule.points.size(); ++qi) {
        const auto& val = p2_val[qi];
        const Vec2 x = map.B * rule.points[qi].xhat + map.b;
        const double wd = rule.points[qi].w * map.det;

        Vec2 vh = Vec2::Zero();
        for (int i = 0; i < 6; ++i) {
          vh[0] += v[nodes[i]] * val[i];
          vh[1] += v[ns + nodes[i]] * val[i];
        }
        l2sq += wd * (vh - data.velocity(t, x)).squaredNorm();

        if (m == 0) continue;

        std::array<Vec2, 6> g;
        for (int i = 0; i < 6; ++i) g[i] = map.B_inv_t * p2_grad[qi][i];
        Mat2 gradvh = Mat2::Zero();
        for (int i = 0; i < 6; ++i) {
          gradvh.row(0) += v[nodes[i]] * g[i].transpose();
          gradvh.row(1) += v[ns + nodes[i]] * g[i].transpose();
        }
        double qh = 0.0;
        for (int k = 0; k < 3; ++k)
          qh += (*q_h)[verts[k]] * p1_val[qi][k];

        const double pk = p_cell[c];
        const Mat2 grad_exact = data.velocity_gradient(t, x);

        const Mat2 df = tensor_F(sp.delta, pk, gradvh) -
                        tensor_F(sp.delta, pk, grad_exact);
        acc_f += tau * wd * df.squaredNorm();

        const Mat2 dfs =
            tensor_F_conj(sp.delta, pk, stress(sp, pk, gradvh)) -
            tensor_F_conj(sp.delta, pk, stress(sp, pk, grad_exact));
        acc_fstar += tau * wd * dfs.squaredNorm();

        const double shift = sym_part(grad_exact).norm();
        const double presserr = std::abs(qh - data.pressure(t, x));
        acc_phistar +=
            tau * wd * phi_shifted_conj(sp.delta, pk, shift, presserr);
      }
    }
    linf_l2 = std::max(linf_l2, std::sqrt(l2sq));
  }

  ErrorSet e;
  e.e_F = std::sqrt(acc_f);
  e.e_Fstar = std::sqrt(acc_fstar);
  e.e_phistar = std::sqrt(acc_phistar);
  e.e_L2 = linf_l2;
  return e;
}

std::vector<double> eoc_sequence(const std::vector<double>& errors,
                                 const std::vector<double>& scales) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> out(errors.size(), nan);
  for (std::size_t n = 1; n < errors.size() && n < scales.size(); ++n) {
    const double e0 = errors[n - 1], e1 = errors[n];
    const double s0 = scales[n - 1], s1 = scales[n];
    if (!(e0 > 0.0) || !(e1 > 0.0) || !(s0 > 0.0) || !(s1 > 0.0) ||
        !std::isfinite(e0) || !std::isfinite(e1) || s0 == s1)
      continue;
    out[n] = std::log(e1 / e0) / std::log(s1 / s0);
  }
  return out;
}

} // namespace varpstokes
