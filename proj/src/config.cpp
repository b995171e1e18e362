#include "varpstokes/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace varpstokes {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
  }
  if (pos != value.size())
    throw ConfigError("trailing characters in value for " + key);
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v))
    throw ConfigError(key + " must be an integer");
  return static_cast<int>(v);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

} // namespace

void apply_config_entry(StudyConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "p_minus") cfg.p_minus = parse_double(key, value);
  else if (key == "p_plus") cfg.p_plus = parse_double(key, value);
  else if (key == "alpha") cfg.alpha = parse_double(key, value);
  else if (key == "beta") cfg.beta = parse_double(key, value);
  else if (key == "gamma") cfg.gamma = parse_double(key, value);
  else if (key == "case") cfg.pressure_case = parse_int(key, value);
  else if (key == "delta") cfg.delta = parse_double(key, value);
  else if (key == "nu0") cfg.nu0 = parse_double(key, value);
  else if (key == "T") cfg.T = parse_double(key, value);
  else if (key == "max_level") cfg.max_level = parse_int(key, value);
  else if (key == "quad_degree_assembly") cfg.quad_degree_assembly = parse_int(key, value);
  else if (key == "quad_degree_error") cfg.quad_degree_error = parse_int(key, value);
  else if (key == "newton_abs_tol") cfg.newton.abs_tol = parse_double(key, value);
  else if (key == "newton_rel_tol") cfg.newton.rel_tol = parse_double(key, value);
  else if (key == "newton_max_iter") cfg.newton.max_iter = parse_int(key, value);
  else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_double(key, value));
  else if (key == "format") cfg.format = value;
  else if (key == "out") cfg.out = value;
  else throw ConfigError("unknown config key: " + key);
}

StudyConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  StudyConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not key=value");
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void StudyConfig::finalize() {
  if (std::isnan(p_plus)) p_plus = p_minus + 1.0;
  if (std::isnan(beta)) beta = alpha;
  if (std::isnan(gamma)) gamma = alpha;

  if (!(p_minus > 1.0)) throw ConfigError("p_minus must be > 1");
  if (!(p_plus >= p_minus)) throw ConfigError("p_plus must be >= p_minus");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ConfigError("alpha must be in (0, 2]");
  if (!(beta > 0.0 && beta <= 2.0)) throw ConfigError("beta must be in (0, 2]");
  if (!(gamma > 0.0 && gamma <= 2.0)) throw ConfigError("gamma must be in (0, 2]");
  if (pressure_case != 1 && pressure_case != 2)
    throw ConfigError("case must be 1 or 2");
  if (pressure_case == 2 && p_minus < 2.0)
    throw ConfigError("case 2 requires p_minus >= 2");
  if (!(delta >= 0.0)) throw ConfigError("delta must be >= 0");
  if (!(nu0 > 0.0)) throw ConfigError("nu0 must be > 0");
  if (!(T > 0.0)) throw ConfigError("T must be > 0");
  if (max_level < 0 || max_level > 7)
    throw ConfigError("max_level must be in 0..7");
  for (int d : {quad_degree_assembly, quad_degree_error})
    if (d != 2 && d != 4 && d != 6 && d != 8)
      throw ConfigError("quadrature degrees must be one of 2, 4, 6, 8");
  if (!(newton.abs_tol > 0.0) || !(newton.rel_tol > 0.0))
    throw ConfigError("newton tolerances must be > 0");
  if (newton.max_iter < 1) throw ConfigError("newton_max_iter must be >= 1");
  if (format != "csv" && format != "json" && format != "md")
    throw ConfigError("format must be csv, json, or md");
  if (!std::isnan(check_tables) && !(check_tables > 0.0))
    throw ConfigError("check-tables tolerance must be > 0");
}

} // namespace varpstokes
