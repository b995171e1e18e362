// Acceptance suite for the convergence-study harness. Each criterion prints
// exactly one PASS/FAIL line with the measured value and the pinned target;
// the process exits 0 only if every line passes. Tolerances are fixed here
// on purpose: do not widen them to make a line green.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "polynomial_solution.hpp"
#include "varpstokes/errors.hpp"
#include "varpstokes/report.hpp"
#include "varpstokes/selfcheck.hpp"
#include "varpstokes/study.hpp"

namespace {

using namespace varpstokes;

constexpr double kPolyExactTol = 1e-8;   // discrete-exactness ceiling
constexpr double kMonotoneNoise = 0.05;  // allowed growth of |EOC - rate|
constexpr double kL2Floor = 1.3;         // hard floor for the L2 superconvergence order
constexpr double kSelfcheckBudget = 60.0; // seconds

int g_failures = 0;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

void line(bool ok, const std::string& id, const std::string& detail) {
  std::printf("%s %s  %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void skip(const std::string& id, const std::string& why) {
  std::printf("SKIP %s  %s\n", id.c_str(), why.c_str());
  std::fflush(stdout);
}

struct StudyOutcome {
  StudyReport report;
  bool converged = false;
  std::string error;
};

StudyOutcome run_anchor(double p_minus, double alpha, int pressure_case,
                        int max_level) {
  StudyConfig cfg;
  cfg.p_minus = p_minus;
  cfg.alpha = alpha;
  cfg.pressure_case = pressure_case;
  cfg.max_level = max_level;
  cfg.finalize();
  std::cerr << "running study p_minus=" << p_minus << " alpha=" << alpha
            << " case=" << pressure_case << " levels 0.." << max_level << "\n";
  StudyOutcome out;
  try {
    out.report = run_study(cfg, &std::cerr);
    out.converged = true;
  } catch (const SolverFailure& f) {
    out.error = std::string(f.what()) + " at step " + std::to_string(f.step);
  }
  return out;
}

std::string tag(double p_minus, double alpha, int pressure_case) {
  return "(p" + fmt("%.2f", p_minus) + ",a" + fmt("%.2f", alpha) + ",case" +
         std::to_string(pressure_case) + ")";
}

// quantity: 0 e_F, 1 e_Fstar, 2 e_phistar, 3 e_L2
void check_order(const std::string& id, const StudyOutcome& s, int quantity,
                 int level, double target, double tol) {
  if (!s.converged) {
    line(false, id, "study did not converge: " + s.error);
    return;
  }
  const double got = s.report.eoc_of(quantity)[level];
  const bool ok = std::isfinite(got) && std::abs(got - target) <= tol;
  line(ok, id,
       "EOC_" + std::to_string(level) + " = " + fmt("%.4f", got) +
           " (target " + fmt("%.3f", target) + " +- " + fmt("%.2f", tol) + ")");
}

// |EOC_n - rate| may not grow by more than the noise across n = 2..4.
void check_monotone_approach(const std::string& id, const StudyOutcome& s,
                             int quantity, double rate) {
  if (!s.converged) {
    line(false, id, "study did not converge: " + s.error);
    return;
  }
  const std::vector<double> eoc = s.report.eoc_of(quantity);
  bool ok = true;
  std::string chain;
  for (int n = 1; n <= 4; ++n) {
    chain += (n > 1 ? " " : "") + fmt("%.3f", eoc[n]);
    if (n < 2) continue;
    ok = ok && std::abs(eoc[n] - rate) <= std::abs(eoc[n - 1] - rate) +
                                              kMonotoneNoise;
  }
  line(ok, id,
       "EOC_1..4 = [" + chain + "] approaching rate " + fmt("%.3f", rate) +
           " (noise " + fmt("%.2f", kMonotoneNoise) + ")");
}

void check_polynomial_exactness() {
  const PolynomialSolution sol;
  double worst = 0.0;
  int worst_level = 0;
  for (int level = 0; level <= 2; ++level) {
    const Mesh mesh = Mesh::unit_square_refined(level);
    const TaylorHoodSpace space(mesh);
    const TimeGrid grid = TimeGrid::for_level(0.1, level);
    const SlabHistory hist =
        run_time_loop(space, sol, grid, QuadRule::triangle(6), NewtonOptions{});
    const ErrorSet e = compute_errors(space, sol, hist);
    for (double v : {e.e_F, e.e_Fstar, e.e_phistar, e.e_L2})
      if (v > worst) {
        worst = v;
        worst_level = level;
      }
  }
  line(worst <= kPolyExactTol, "exact-pair-reproduction",
       "max error " + fmt("%.2e", worst) + " at level " +
           std::to_string(worst_level) + " over levels 0..2 (target <= " +
           fmt("%.0e", kPolyExactTol) + ")");
}

void check_selfchecks() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CheckResult> results = run_selfchecks(42);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  int passed = 0;
  std::string first_fail;
  for (const CheckResult& r : results) {
    if (r.pass) ++passed;
    else if (first_fail.empty()) first_fail = r.name + ": " + r.detail;
  }
  const bool ok = passed == static_cast<int>(results.size()) &&
                  seconds <= kSelfcheckBudget;
  std::string detail = std::to_string(passed) + "/" +
                       std::to_string(results.size()) + " checks in " +
                       fmt("%.1f", seconds) + "s (target all, <= " +
                       fmt("%.0f", kSelfcheckBudget) + "s)";
  if (!first_fail.empty()) detail += "; first failure: " + first_fail;
  line(ok, "property-suites", detail);
}

void check_depth_support() {
  bool ok = true;
  std::string detail;
  try {
    StudyConfig cfg;
    cfg.max_level = 7;
    cfg.finalize();
    ok = TimeGrid::for_level(cfg.T, 7).M == 512;
    detail = "max_level 7 accepted, 512 steps at the deepest level";
  } catch (const ConfigError& err) {
    ok = false;
    detail = std::string("max_level 7 rejected: ") + err.what();
  }
  line(ok, "depth-7-supported", detail);
}

} // namespace

int main() {
  check_polynomial_exactness();

  // Anchors on the bundled reference grid, levels 0..4 (0..3 below p = 2).
  const StudyOutcome a = run_anchor(2.0, 1.0, 1, 4);
  const StudyOutcome b = run_anchor(2.25, 0.75, 1, 4);
  const StudyOutcome c = run_anchor(2.25, 1.0, 2, 4);
  const StudyOutcome d = run_anchor(2.0, 1.0, 2, 4);
  const StudyOutcome e = run_anchor(1.75, 1.0, 1, 3);

  check_order("order-F" + tag(2.0, 1.0, 1), a, 0, 4, 0.734, 0.10);
  check_order("order-Fstar" + tag(2.0, 1.0, 1), a, 1, 4, 0.728, 0.10);
  // Approach rate pinned to min(1, p_plus'/2) * alpha = 0.75 at p_plus = 3,
  // for both pressure families.
  check_monotone_approach("monotone-Fstar" + tag(2.0, 1.0, 1), a, 1, 0.75);

  check_order("order-F" + tag(2.25, 0.75, 1), b, 0, 4, 0.547, 0.08);
  check_order("order-L2" + tag(2.25, 0.75, 1), b, 3, 4, 1.653, 0.15);
  if (b.converged) {
    const double got = b.report.eoc_of(3)[4];
    line(std::isfinite(got) && got >= kL2Floor,
         "floor-L2" + tag(2.25, 0.75, 1),
         "EOC_4 = " + fmt("%.4f", got) + " (floor " + fmt("%.1f", kL2Floor) +
             ")");
  } else {
    line(false, "floor-L2" + tag(2.25, 0.75, 1),
         "study did not converge: " + b.error);
  }

  // Known gap: the case-2 pressure family converges faster here than the
  // bundled reference orders; see README for the analysis. The targets stay
  // pinned rather than widened.
  check_order("order-F" + tag(2.25, 1.0, 2), c, 0, 4, 0.725, 0.12);
  skip("order-F-n5" + tag(2.25, 1.0, 2),
       "level-5 extension optional, not run at desk scale");

  check_order("order-phistar" + tag(2.0, 1.0, 2), d, 2, 4, 0.961, 0.12);
  check_monotone_approach("monotone-phistar" + tag(2.0, 1.0, 2), d, 2, 0.75);

  if (e.converged) {
    int newton_max = 0;
    for (const LevelRow& row : e.report.rows)
      newton_max = std::max(newton_max, row.newton_max);
    line(true, "converges-below-2" + tag(1.75, 1.0, 1),
         "all levels 0..3 solved, max " + std::to_string(newton_max) +
             " newton iterations per step");
  } else {
    line(false, "converges-below-2" + tag(1.75, 1.0, 1),
         "study did not converge: " + e.error);
  }
  check_order("order-F" + tag(1.75, 1.0, 1), e, 0, 3, 0.78, 0.15);

  check_selfchecks();
  check_depth_support();

  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
