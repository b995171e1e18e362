#include "varpstokes/assembly.hpp"

#include <cassert>

namespace varpstokes {

namespace {

struct RuleTables {
  std::vector<std::array<double, 6>> p2_val;
  std::vector<std::array<Vec2, 6>> p2_grad; // reference gradients
  std::vector<std::array<double, 3>> p1_val;
};

RuleTables tabulate(const QuadRule& rule) {
  RuleTables t;
  t.p2_val.reserve(rule.points.size());
  t.p2_grad.reserve(rule.points.size());
  t.p1_val.reserve(rule.points.size());
  for (const auto& q : rule.points) {
    t.p2_val.push_back(ScalarP2::values(q.xhat));
    t.p2_grad.push_back(ScalarP2::gradients(q.xhat));
    t.p1_val.push_back(ScalarP1::values(q.xhat));
  }
  return t;
}

struct CellState {
  std::array<int, 6> nodes;
  std::array<bool, 6> node_bdry;
  std::array<int, 3> pdofs;
  double cx[6], cy[6], px[6], py[6], qc[3];
};

CellState gather(const TaylorHoodSpace& space, int c, const Vector& z,
                 const Vector& v_prev) {
  CellState s;
  s.nodes = space.cell_scalar_nodes(c);
  const auto& verts = space.mesh().cell(c);
  const int ns = space.n_scalar();
  for (int i = 0; i < 6; ++i) {
    s.node_bdry[i] = space.scalar_node_on_boundary(s.nodes[i]);
    s.cx[i] = z[s.nodes[i]];
    s.cy[i] = z[ns + s.nodes[i]];
    s.px[i] = v_prev.size() ? v_prev[s.nodes[i]] : 0.0;
    s.py[i] = v_prev.size() ? v_prev[ns + s.nodes[i]] : 0.0;
  }
  for (int k = 0; k < 3; ++k) {
    s.pdofs[k] = space.pressure_dof(verts[k]);
    s.qc[k] = z[s.pdofs[k]];
  }
  return s;
}

} // namespace

std::vector<double> freeze_exponent(const Mesh& mesh, double t,
                                    const ManufacturedSolution& data) {
  std::vector<double> p(mesh.n_cells());
  for (std::size_t c = 0; c < mesh.n_cells(); ++c)
    p[c] = data.exponent_at(t, mesh.barycenter(static_cast<int>(c)));
  return p;
}

std::vector<double> freeze_exponent(const Mesh& mesh, double t,
                                    const ExponentField& field) {
  std::vector<double> p(mesh.n_cells());
  for (std::size_t c = 0; c < mesh.n_cells(); ++c)
    p[c] = field(t, mesh.barycenter(static_cast<int>(c)));
  return p;
}

Vector slab_residual(const SlabProblem& prob, const Vector& z,
                     const Vector& v_prev) {
  const TaylorHoodSpace& space = *prob.space;
  const Mesh& mesh = space.mesh();
  const QuadRule& rule = *prob.rule;
  const RuleTables tab = tabulate(rule);
  const int ns = space.n_scalar();
  const int mdof = space.multiplier_dof();
  assert(static_cast<int>(prob.p_cell.size()) == static_cast<int>(mesh.n_cells()));

  Vector r = Vector::Zero(space.n_system());
  const double lambda = z[mdof];

  for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap m = mesh.map(static_cast<int>(c));
    const CellState s = gather(space, static_cast<int>(c), z, v_prev);
    const double p_c = prob.p_cell[c];

    for (std::size_t qi = 0; qi < rule.points.size(); ++qi) {
      const auto& val = tab.p2_val[qi];
      const auto& p1 = tab.p1_val[qi];
      std::array<Vec2, 6> g;
      for (int i = 0; i < 6; ++i) g[i] = m.B_inv_t * tab.p2_grad[qi][i];

      Vec2 v = Vec2::Zero(), vp = Vec2::Zero();
      Mat2 gradv = Mat2::Zero();
      for (int i = 0; i < 6; ++i) {
        v[0] += s.cx[i] * val[i];
        v[1] += s.cy[i] * val[i];
        vp[0] += s.px[i] * val[i];
        vp[1] += s.py[i] * val[i];
        gradv.row(0) += s.cx[i] * g[i].transpose();
        gradv.row(1) += s.cy[i] * g[i].transpose();
      }
      double qval = 0.0;
      for (int k = 0; k < 3; ++k) qval += s.qc[k] * p1[k];

      const Vec2 x = m.B * rule.points[qi].xhat + m.b;
      Mat2 visc = stress(prob.stress, p_c, gradv);
      Vec2 force = Vec2::Zero();
      if (prob.data) {
        visc -= prob.data->stress_source(prob.t, x);
        force = prob.data->source(prob.t, x);
      }
      const Vec2 dv = (v - vp) / prob.tau;
      const double wd = rule.points[qi].w * m.det;

      for (int i = 0; i < 6; ++i) {
        if (s.node_bdry[i]) continue;
        for (int comp = 0; comp < 2; ++comp) {
          const double term = (dv[comp] - force[comp]) * val[i] +
                              visc.row(comp).dot(g[i]) - qval * g[i][comp];
          r[comp * ns + s.nodes[i]] += wd * term;
        }
      }
      const double divv = gradv(0, 0) + gradv(1, 1);
      for (int k = 0; k < 3; ++k)
        r[s.pdofs[k]] += wd * (divv + lambda) * p1[k];
      r[mdof] += wd * qval;
    }
  }

  for (int node : space.boundary_scalar_nodes())
    for (int comp = 0; comp < 2; ++comp) {
      const int dof = comp * ns + node;
      r[dof] = z[dof] - (prob.bc.size() ? prob.bc[dof] : 0.0);
    }
  return r;
}

SparseMatrix slab_jacobian(const SlabProblem& prob, const Vector& z) {
  const TaylorHoodSpace& space = *prob.space;
  const Mesh& mesh = space.mesh();
  const QuadRule& rule = *prob.rule;
  const RuleTables tab = tabulate(rule);
  const int ns = space.n_scalar();
  const int mdof = space.multiplier_dof();

  std::vector<Triplet> trip;
  trip.reserve(mesh.n_cells() * rule.points.size() * 200 + space.n_system());
  const Vector no_prev;

  for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap m = mesh.map(static_cast<int>(c));
    const CellState s = gather(space, static_cast<int>(c), z, no_prev);
    const double p_c = prob.p_cell[c];

    for (std::size_t qi = 0; qi < rule.points.size(); ++qi) {
      const auto& val = tab.p2_val[qi];
      const auto& p1 = tab.p1_val[qi];
      std::array<Vec2, 6> g;
      for (int i = 0; i < 6; ++i) g[i] = m.B_inv_t * tab.p2_grad[qi][i];

      Mat2 gradv = Mat2::Zero();
      for (int i = 0; i < 6; ++i) {
        gradv.row(0) += s.cx[i] * g[i].transpose();
        gradv.row(1) += s.cy[i] * g[i].transpose();
      }
      const StressDerivative sd = stress_derivative(prob.stress, p_c, gradv);
      std::array<Vec2, 6> ag;
      for (int i = 0; i < 6; ++i) ag[i] = sd.a_sym * g[i];

      const double wd = rule.points[qi].w * m.det;
      const double inv_tau = 1.0 / prob.tau;

      for (int i = 0; i < 6; ++i) {
        if (s.node_bdry[i]) continue;
        for (int ci = 0; ci < 2; ++ci) {
          const int row = ci * ns + s.nodes[i];
          for (int j = 0; j < 6; ++j) {
            if (s.node_bdry[j]) continue;
            const double gij = g[i].dot(g[j]);
            for (int cj = 0; cj < 2; ++cj) {
              const double same = (ci == cj) ? 1.0 : 0.0;
              const double entry =
                  same * inv_tau * val[i] * val[j] +
                  sd.weight_sym * 0.5 * (same * gij + g[i][cj] * g[j][ci]) +
                  sd.weight_dyad * ag[j][cj] * ag[i][ci];
              trip.emplace_back(row, cj * ns + s.nodes[j], wd * entry);
            }
          }
          for (int k = 0; k < 3; ++k)
            trip.emplace_back(row, s.pdofs[k], -wd * p1[k] * g[i][ci]);
        }
      }
      for (int k = 0; k < 3; ++k) {
        for (int j = 0; j < 6; ++j) {
          if (s.node_bdry[j]) continue;
          for (int cj = 0; cj < 2; ++cj)
            trip.emplace_back(s.pdofs[k], cj * ns + s.nodes[j],
                              wd * p1[k] * g[j][cj]);
        }
        trip.emplace_back(s.pdofs[k], mdof, wd * p1[k]);
        trip.emplace_back(mdof, s.pdofs[k], wd * p1[k]);
      }
    }
  }

  for (int node : space.boundary_scalar_nodes())
    for (int comp = 0; comp < 2; ++comp) {
      const int dof = comp * ns + node;
      trip.emplace_back(dof, dof, 1.0);
    }

  SparseMatrix jac(space.n_system(), space.n_system());
  jac.setFromTriplets(trip.begin(), trip.end());
  jac.makeCompressed();
  return jac;
}

ConsistencyDiagnostic exact_weak_residual(const TaylorHoodSpace& space,
                                          const ManufacturedSolution& data,
                                          const QuadRule& rule, double t,
                                          double tau) {
  const Mesh& mesh = space.mesh();
  const RuleTables tab = tabulate(rule);
  const int ns = space.n_scalar();
  const std::vector<double> p_cell = freeze_exponent(mesh, t, data);

  Vector r = Vector::Zero(space.n_system());
  for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap m = mesh.map(static_cast<int>(c));
    const auto nodes = space.cell_scalar_nodes(static_cast<int>(c));
    const auto& verts = mesh.cell(static_cast<int>(c));
    for (std::size_t qi = 0; qi < rule.points.size(); ++qi) {
      const auto& val = tab.p2_val[qi];
      const auto& p1 = tab.p1_val[qi];
      std::array<Vec2, 6> g;
      for (int i = 0; i < 6; ++i) g[i] = m.B_inv_t * tab.p2_grad[qi][i];

      const Vec2 x = m.B * rule.points[qi].xhat + m.b;
      const Mat2 gradv = data.velocity_gradient(t, x);
      const Mat2 visc = stress(data.stress_params(), p_cell[c], gradv) -
                        data.stress_source(t, x);
      const double qval = data.pressure(t, x);
      const Vec2 dv =
          (data.velocity(t, x) - data.velocity(t - tau, x)) / tau;
      const Vec2 force = data.source(t, x);
      const double wd = rule.points[qi].w * m.det;

      for (int i = 0; i < 6; ++i) {
        if (space.scalar_node_on_boundary(nodes[i])) continue;
        for (int comp = 0; comp < 2; ++comp)
          r[comp * ns + nodes[i]] +=
              wd * ((dv[comp] - force[comp]) * val[i] +
                    visc.row(comp).dot(g[i]) - qval * g[i][comp]);
      }
      const double divv = gradv(0, 0) + gradv(1, 1);
      for (int k = 0; k < 3; ++k)
        r[space.pressure_dof(verts[k])] += wd * divv * p1[k];
    }
  }

  ConsistencyDiagnostic d;
  d.momentum = r.head(space.n_velocity()).norm();
  d.divergence = r.segment(space.n_velocity(), space.n_pressure()).norm();
  return d;
}

} // namespace varpstokes
