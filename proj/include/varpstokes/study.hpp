#ifndef VARPSTOKES_STUDY_HPP
#define VARPSTOKES_STUDY_HPP

#include <iosfwd>
#include <vector>

#include "varpstokes/config.hpp"
#include "varpstokes/errors.hpp"

namespace varpstokes {

struct LevelRow {
  int level = 0;
  double h = 1.0;
  double tau = 0.0;
  int steps = 0;
  ErrorSet err;
  int newton_total = 0;
  int newton_max = 0;
  ConsistencyDiagnostic consistency; // exact fields in the final slab
};

struct StudyReport {
  StudyConfig config;
  std::vector<LevelRow> rows;

  std::vector<double> scales() const; // h_n + tau_n
  std::vector<double> errors_of(int quantity) const; // 0:F 1:Fstar 2:phistar 3:L2
  std::vector<double> eoc_of(int quantity) const;
};

MmsParams mms_params_from(const StudyConfig& cfg);

// Runs levels 0..max_level of the manufactured-solution study.
// Progress lines go to `log` when non-null.
StudyReport run_study(const StudyConfig& cfg, std::ostream* log = nullptr);

} // namespace varpstokes

#endif
