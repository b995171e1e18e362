#include "varpstokes/study.hpp"

#include <cmath>
#include <ostream>

namespace varpstokes {

std::vector<double> StudyReport::scales() const {
  std::vector<double> s;
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back(r.h + r.tau);
  return s;
}

std::vector<double> StudyReport::errors_of(int quantity) const {
  std::vector<double> e;
  e.reserve(rows.size());
  for (const auto& r : rows) {
    switch (quantity) {
      case 0: e.push_back(r.err.e_F); break;
      case 1: e.push_back(r.err.e_Fstar); break;
      case 2: e.push_back(r.err.e_phistar); break;
      default: e.push_back(r.err.e_L2); break;
    }
  }
  return e;
}

std::vector<double> StudyReport::eoc_of(int quantity) const {
  return eoc_sequence(errors_of(quantity), scales());
}

MmsParams mms_params_from(const StudyConfig& cfg) {
  MmsParams p;
  p.p_minus = cfg.p_minus;
  p.p_plus = cfg.p_plus;
  p.alpha = cfg.alpha;
  p.beta = cfg.beta;
  p.gamma = cfg.gamma;
  p.pressure_case = cfg.pressure_case;
  p.stress.nu0 = cfg.nu0;
  p.stress.delta = cfg.delta;
  p.T = cfg.T;
  return p;
}

StudyReport run_study(const StudyConfig& cfg, std::ostream* log) {
  StudyReport report;
  report.config = cfg;
  const VarExpSolution sol(mms_params_from(cfg));
  const QuadRule& rule = QuadRule::triangle(cfg.quad_degree_assembly);

  for (int level = 0; level <= cfg.max_level; ++level) {
    const Mesh mesh = Mesh::unit_square_refined(level);
    const TaylorHoodSpace space(mesh);
    const TimeGrid grid = TimeGrid::for_level(cfg.T, level);

    StepCallback on_step;
    if (log && cfg.verbose)
      on_step = [&, level](int m, int total, double t, const StepStats& st) {
        (*log) << "level " << level << " step " << m << "/" << total
               << " t=" << t << " newton=" << st.newton_iterations
               << " residual=" << st.final_residual << "\n";
      };

    const SlabHistory hist =
        run_time_loop(space, sol, grid, rule, cfg.newton, on_step);
    const ErrorSet err = compute_errors(space, sol, hist, cfg.quad_degree_error);

    LevelRow row;
    row.level = level;
    row.h = mesh.h();
    row.tau = grid.tau();
    row.steps = grid.M;
    row.err = err;
    for (const auto& st : hist.stats) {
      row.newton_total += st.newton_iterations;
      row.newton_max = std::max(row.newton_max, st.newton_iterations);
    }
    row.consistency = exact_weak_residual(
        space, sol, QuadRule::triangle(cfg.quad_degree_error), cfg.T, grid.tau());
    report.rows.push_back(row);

    if (log)
      (*log) << "level " << level << " done: h=" << row.h << " tau=" << row.tau
             << " e_F=" << err.e_F << " e_F*=" << err.e_Fstar
             << " e_phi*=" << err.e_phistar << " e_L2=" << err.e_L2
             << " newton_max=" << row.newton_max << "\n";
  }
  return report;
}

} // namespace varpstokes
