#include "varpstokes/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "varpstokes/exponent.hpp"

namespace varpstokes {

double expected_rate(const StudyConfig& cfg) {
  if (cfg.pressure_case == 2) return cfg.alpha;
  return std::min(1.0, conjugate_exponent(cfg.p_plus) / 2.0) * cfg.alpha;
}

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

// Reference orders for the bundled study grid: unit square, T = 0.1,
// tau_n = T * 2^(-n-2), beta = gamma = alpha, delta = 1e-4, nu0 = 1.
// Levels n = 4..7, alpha in {1.0, 0.75, 0.5}, p_minus in
// {1.5, 1.75, 2.0, 2.25, 2.5} (case 2 starts at 2.0), p_plus = p_minus + 1.
// Layout: [level-4][alpha index][p index].
constexpr double kNaN = -1.0; // sentinel, mapped to NaN on lookup

constexpr double kEocF1[4][3][5] = {
    {{0.807, 0.765, 0.734, 0.709, 0.689},
     {0.614, 0.587, 0.565, 0.547, 0.532},
     {0.410, 0.397, 0.384, 0.373, 0.363}},
    {{0.830, 0.782, 0.747, 0.720, 0.699},
     {0.627, 0.594, 0.568, 0.548, 0.532},
     {0.422, 0.401, 0.385, 0.372, 0.361}},
    {{0.836, 0.787, 0.751, 0.723, 0.701},
     {0.629, 0.594, 0.568, 0.547, 0.530},
     {0.424, 0.401, 0.384, 0.370, 0.358}},
    {{0.837, 0.788, 0.751, 0.723, 0.701},
     {0.629, 0.594, 0.566, 0.545, 0.528},
     {0.424, 0.400, 0.382, 0.368, 0.356}}};

constexpr double kEocF2[4][3][5] = {
    {{kNaN, kNaN, 0.784, 0.725, 0.659},
     {kNaN, kNaN, 0.731, 0.732, 0.732},
     {kNaN, kNaN, 0.511, 0.513, 0.513}},
    {{kNaN, kNaN, 0.912, 0.892, 0.864},
     {kNaN, kNaN, 0.747, 0.748, 0.747},
     {kNaN, kNaN, 0.515, 0.515, 0.514}},
    {{kNaN, kNaN, 0.961, 0.954, 0.944},
     {kNaN, kNaN, 0.753, 0.753, 0.753},
     {kNaN, kNaN, 0.515, 0.514, 0.513}},
    {{kNaN, kNaN, 0.983, 0.980, 0.975},
     {kNaN, kNaN, 0.755, 0.755, 0.755},
     {kNaN, kNaN, 0.514, 0.513, 0.512}}};

constexpr double kEocFstar1[4][3][5] = {
    {{0.795, 0.757, 0.728, 0.704, 0.685},
     {0.597, 0.575, 0.556, 0.540, 0.526},
     {0.385, 0.380, 0.372, 0.363, 0.356}},
    {{0.824, 0.778, 0.744, 0.718, 0.697},
     {0.617, 0.587, 0.563, 0.544, 0.529},
     {0.405, 0.390, 0.377, 0.365, 0.355}},
    {{0.833, 0.784, 0.749, 0.722, 0.700},
     {0.624, 0.590, 0.565, 0.544, 0.528},
     {0.413, 0.394, 0.378, 0.365, 0.355}},
    {{0.836, 0.786, 0.750, 0.723, 0.700},
     {0.626, 0.591, 0.565, 0.544, 0.527},
     {0.417, 0.395, 0.378, 0.365, 0.354}}};

constexpr double kEocFstar2[4][3][5] = {
    {{kNaN, kNaN, 0.777, 0.721, 0.656},
     {kNaN, kNaN, 0.722, 0.725, 0.726},
     {kNaN, kNaN, 0.499, 0.503, 0.506}},
    {{kNaN, kNaN, 0.907, 0.889, 0.862},
     {kNaN, kNaN, 0.742, 0.743, 0.744},
     {kNaN, kNaN, 0.506, 0.508, 0.509}},
    {{kNaN, kNaN, 0.959, 0.952, 0.942},
     {kNaN, kNaN, 0.750, 0.750, 0.750},
     {kNaN, kNaN, 0.509, 0.509, 0.510}},
    {{kNaN, kNaN, 0.981, 0.979, 0.974},
     {kNaN, kNaN, 0.753, 0.753, 0.753},
     {kNaN, kNaN, 0.510, 0.510, 0.510}}};

constexpr double kEocPhistar1[4][3][5] = {
    {{0.858, 0.803, 0.764, 0.735, 0.711},
     {0.656, 0.615, 0.585, 0.562, 0.543},
     {0.462, 0.429, 0.405, 0.387, 0.373}},
    {{0.849, 0.796, 0.758, 0.729, 0.706},
     {0.645, 0.606, 0.577, 0.554, 0.536},
     {0.448, 0.418, 0.395, 0.379, 0.365}},
    {{0.844, 0.792, 0.755, 0.726, 0.704},
     {0.639, 0.600, 0.572, 0.549, 0.532},
     {0.439, 0.411, 0.390, 0.373, 0.360}},
    {{0.840, 0.790, 0.753, 0.725, 0.702},
     {0.634, 0.597, 0.568, 0.547, 0.529},
     {0.434, 0.406, 0.386, 0.370, 0.358}}};

constexpr double kEocPhistar2[4][3][5] = {
    {{kNaN, kNaN, 0.961, 0.969, 0.978},
     {kNaN, kNaN, 0.766, 0.763, 0.762},
     {kNaN, kNaN, 0.537, 0.532, 0.528}},
    {{kNaN, kNaN, 0.976, 0.977, 0.979},
     {kNaN, kNaN, 0.762, 0.760, 0.759},
     {kNaN, kNaN, 0.527, 0.523, 0.521}},
    {{kNaN, kNaN, 0.987, 0.987, 0.986},
     {kNaN, kNaN, 0.760, 0.759, 0.758},
     {kNaN, kNaN, 0.522, 0.519, 0.517}},
    {{kNaN, kNaN, 0.995, 0.994, 0.993},
     {kNaN, kNaN, 0.759, 0.758, 0.758},
     {kNaN, kNaN, 0.518, 0.516, 0.514}}};

constexpr double kEocL21[4][3][5] = {
    {{1.754, 1.733, 1.713, 1.691, 1.666},
     {1.660, 1.662, 1.659, 1.653, 1.643},
     {1.548, 1.571, 1.586, 1.596, 1.601}},
    {{1.805, 1.775, 1.750, 1.725, 1.699},
     {1.683, 1.679, 1.676, 1.670, 1.660},
     {1.562, 1.580, 1.594, 1.604, 1.610}},
    {{1.831, 1.797, 1.769, 1.742, 1.714},
     {1.692, 1.687, 1.684, 1.678, 1.668},
     {1.563, 1.580, 1.595, 1.606, 1.613}},
    {{1.846, 1.811, 1.782, 1.754, 1.723},
     {1.697, 1.692, 1.689, 1.683, 1.673},
     {1.561, 1.579, 1.594, 1.606, 1.614}}};

constexpr double kEocL22[4][3][5] = {
    {{kNaN, kNaN, 1.642, 1.578, 1.484},
     {kNaN, kNaN, 1.715, 1.702, 1.680},
     {kNaN, kNaN, 1.645, 1.652, 1.650}},
    {{kNaN, kNaN, 1.763, 1.721, 1.664},
     {kNaN, kNaN, 1.750, 1.737, 1.716},
     {kNaN, kNaN, 1.658, 1.666, 1.665}},
    {{kNaN, kNaN, 1.828, 1.787, 1.740},
     {kNaN, kNaN, 1.769, 1.755, 1.732},
     {kNaN, kNaN, 1.664, 1.672, 1.672}},
    {{kNaN, kNaN, 1.863, 1.819, 1.770},
     {kNaN, kNaN, 1.781, 1.766, 1.742},
     {kNaN, kNaN, 1.666, 1.674, 1.674}}};

int alpha_index(double alpha) {
  constexpr double grid[3] = {1.0, 0.75, 0.5};
  for (int i = 0; i < 3; ++i)
    if (std::abs(alpha - grid[i]) < 1e-9) return i;
  return -1;
}

int p_index(double p_minus) {
  constexpr double grid[5] = {1.5, 1.75, 2.0, 2.25, 2.5};
  for (int i = 0; i < 5; ++i)
    if (std::abs(p_minus - grid[i]) < 1e-9) return i;
  return -1;
}

const char* quantity_name(int quantity) {
  switch (quantity) {
    case 0: return "eoc_F";
    case 1: return "eoc_Fstar";
    case 2: return "eoc_phistar";
    default: return "eoc_L2";
  }
}

} // namespace

double reference_eoc(int quantity, int pressure_case, double alpha,
                     double p_minus, int level) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (level < 4 || level > 7) return nan;
  const int ia = alpha_index(alpha);
  const int ip = p_index(p_minus);
  if (ia < 0 || ip < 0) return nan;
  const bool c1 = pressure_case == 1;
  double value = kNaN;
  switch (quantity) {
    case 0: value = (c1 ? kEocF1 : kEocF2)[level - 4][ia][ip]; break;
    case 1: value = (c1 ? kEocFstar1 : kEocFstar2)[level - 4][ia][ip]; break;
    case 2: value = (c1 ? kEocPhistar1 : kEocPhistar2)[level - 4][ia][ip]; break;
    case 3: value = (c1 ? kEocL21 : kEocL22)[level - 4][ia][ip]; break;
    default: return nan;
  }
  return value == kNaN ? nan : value;
}

bool reference_cell_exists(int pressure_case, double alpha, double p_minus) {
  return std::isfinite(reference_eoc(0, pressure_case, alpha, p_minus, 4));
}

std::string to_csv(const StudyReport& report) {
  std::ostringstream os;
  os << "n,h,tau,e_F,e_Fstar,e_phistar,e_L2,"
        "eoc_F,eoc_Fstar,eoc_phistar,eoc_L2\n";
  std::vector<std::vector<double>> eoc;
  for (int q = 0; q < 4; ++q) eoc.push_back(report.eoc_of(q));
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const LevelRow& row = report.rows[i];
    os << row.level << ',' << fmt("%.6e", row.h) << ',' << fmt("%.6e", row.tau)
       << ',' << fmt("%.6e", row.err.e_F) << ',' << fmt("%.6e", row.err.e_Fstar)
       << ',' << fmt("%.6e", row.err.e_phistar) << ','
       << fmt("%.6e", row.err.e_L2);
    for (int q = 0; q < 4; ++q) {
      os << ',';
      if (i > 0) os << fmt("%.4f", eoc[q][i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string to_json(const StudyReport& report) {
  using json = nlohmann::ordered_json;
  const StudyConfig& cfg = report.config;
  json doc;
  doc["tool"] = "varp-stokes";
  doc["version"] = kVersion;
  json jc;
  jc["p_minus"] = cfg.p_minus;
  jc["p_plus"] = cfg.p_plus;
  jc["alpha"] = cfg.alpha;
  jc["beta"] = cfg.beta;
  jc["gamma"] = cfg.gamma;
  jc["case"] = cfg.pressure_case;
  jc["delta"] = cfg.delta;
  jc["nu0"] = cfg.nu0;
  jc["T"] = cfg.T;
  jc["max_level"] = cfg.max_level;
  jc["quad_degree_assembly"] = cfg.quad_degree_assembly;
  jc["quad_degree_error"] = cfg.quad_degree_error;
  jc["newton_abs_tol"] = cfg.newton.abs_tol;
  jc["newton_rel_tol"] = cfg.newton.rel_tol;
  jc["newton_max_iter"] = cfg.newton.max_iter;
  jc["seed"] = cfg.seed;
  doc["config"] = jc;
  doc["expected_rate"] = expected_rate(cfg);
  json rows = json::array();
  std::vector<std::vector<double>> eoc;
  for (int q = 0; q < 4; ++q) eoc.push_back(report.eoc_of(q));
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const LevelRow& row = report.rows[i];
    json jr;
    jr["level"] = row.level;
    jr["h"] = row.h;
    jr["tau"] = row.tau;
    jr["steps"] = row.steps;
    jr["e_F"] = row.err.e_F;
    jr["e_Fstar"] = row.err.e_Fstar;
    jr["e_phistar"] = row.err.e_phistar;
    jr["e_L2"] = row.err.e_L2;
    for (int q = 0; q < 4; ++q) {
      const double value = i > 0 ? eoc[q][i]
                                 : std::numeric_limits<double>::quiet_NaN();
      if (std::isfinite(value))
        jr[quantity_name(q)] = value;
      else
        jr[quantity_name(q)] = nullptr;
    }
    jr["newton_total"] = row.newton_total;
    jr["newton_max"] = row.newton_max;
    jr["consistency_momentum"] = row.consistency.momentum;
    jr["consistency_divergence"] = row.consistency.divergence;
    rows.push_back(jr);
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

std::string to_markdown(const StudyReport& report) {
  static constexpr const char* kLabels[4] = {"e_F", "e_Fstar", "e_phistar",
                                             "e_L2"};
  std::ostringstream os;
  for (int q = 0; q < 4; ++q) {
    const std::vector<double> errs = report.errors_of(q);
    const std::vector<double> eoc = report.eoc_of(q);
    os << "## " << kLabels[q] << "\n\n";
    os << "| n | h | tau | " << kLabels[q] << " | EOC |\n";
    os << "|--:|--:|--:|--:|--:|\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const LevelRow& row = report.rows[i];
      os << "| " << row.level << " | " << fmt("%.3e", row.h) << " | "
         << fmt("%.3e", row.tau) << " | " << fmt("%.3e", errs[i]) << " | "
         << (i > 0 ? fmt("%.3f", eoc[i]) : std::string("---")) << " |\n";
    }
    os << "| expected rate |  |  |  | " << fmt("%.3f", expected_rate(report.config))
       << " |\n\n";
  }
  return os.str();
}

std::string emit(const StudyReport& report, const std::string& format) {
  if (format == "json") return to_json(report);
  if (format == "md") return to_markdown(report);
  return to_csv(report);
}

int check_against_reference(const StudyReport& report, double tol,
                            std::string& out) {
  const StudyConfig& cfg = report.config;
  std::ostringstream os;
  int failures = 0;
  for (int q = 0; q < 4; ++q) {
    const std::vector<double> eoc = report.eoc_of(q);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const int level = report.rows[i].level;
      const double ref = reference_eoc(q, cfg.pressure_case, cfg.alpha,
                                       cfg.p_minus, level);
      if (!std::isfinite(ref)) continue;
      const double got = eoc[i];
      const double diff = std::abs(got - ref);
      const bool ok = std::isfinite(got) && diff <= tol;
      os << (ok ? "ok  " : "FAIL") << ' ' << quantity_name(q) << " n=" << level
         << " got=" << fmt("%.4f", got) << " ref=" << fmt("%.4f", ref)
         << " |diff|=" << fmt("%.4f", diff) << " tol=" << fmt("%.4f", tol)
         << '\n';
      if (!ok) ++failures;
    }
  }
  out += os.str();
  return failures;
}

} // namespace varpstokes
