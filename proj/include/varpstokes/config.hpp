#ifndef VARPSTOKES_CONFIG_HPP
#define VARPSTOKES_CONFIG_HPP

#include <limits>
#include <stdexcept>
#include <string>

#include "varpstokes/time_newton.hpp"

namespace varpstokes {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Study parameters. NaN fields fall back to their derived defaults in
// finalize(): p_plus = p_minus + 1, beta = gamma = alpha.
struct StudyConfig {
  double p_minus = 2.0;
  double p_plus = std::numeric_limits<double>::quiet_NaN();
  double alpha = 1.0;
  double beta = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  int pressure_case = 1;
  double delta = 1e-4;
  double nu0 = 1.0;
  double T = 0.1;
  int max_level = 4;
  int quad_degree_assembly = 6;
  int quad_degree_error = 8;
  NewtonOptions newton;
  unsigned long seed = 42;
  std::string format = "csv"; // csv | json | md
  std::string out;            // empty => stdout
  double check_tables = std::numeric_limits<double>::quiet_NaN(); // tolerance
  bool verbose = false;

  // Fills derived defaults and validates ranges; throws ConfigError.
  void finalize();
};

// Flat key=value file ('#' comments, blank lines allowed; unknown keys are
// errors). Later duplicates win.
StudyConfig parse_config_file(const std::string& path);

// Applies one key=value pair onto cfg; throws ConfigError for unknown keys or
// unparsable values.
void apply_config_entry(StudyConfig& cfg, const std::string& key,
                        const std::string& value);

} // namespace varpstokes

#endif
