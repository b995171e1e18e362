#include "varpstokes/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "varpstokes/config.hpp"
#include "varpstokes/report.hpp"
#include "varpstokes/selfcheck.hpp"
#include "varpstokes/study.hpp"
#include "varpstokes/time_newton.hpp"

namespace varpstokes {

namespace {

struct StudyFlags {
  std::string config_path;
  StudyConfig flags; // values parsed from the command line
  CLI::App* cmd = nullptr;
};

void add_study_options(CLI::App& study, StudyFlags& sf) {
  sf.cmd = &study;
  study.add_option("--config", sf.config_path, "key=value study file");
  study.add_option("--p-minus", sf.flags.p_minus, "smallest exponent value");
  study.add_option("--p-plus", sf.flags.p_plus,
                   "largest exponent value (default: p_minus + 1)");
  study.add_option("--alpha", sf.flags.alpha, "exponent Hoelder regularity");
  study.add_option("--beta", sf.flags.beta,
                   "velocity regularity knob (default: alpha)");
  study.add_option("--gamma", sf.flags.gamma,
                   "pressure regularity knob (default: alpha)");
  study.add_option("--case", sf.flags.pressure_case,
                   "pressure family, 1 or 2");
  study.add_option("--delta", sf.flags.delta, "stress regularization shift");
  study.add_option("--nu0", sf.flags.nu0, "viscosity scale");
  study.add_option("--T", sf.flags.T, "final time");
  study.add_option("--max-level", sf.flags.max_level,
                   "finest refinement level, 0..7");
  study.add_option("--quad-degree-assembly", sf.flags.quad_degree_assembly,
                   "quadrature degree for assembly (2, 4, 6, 8)");
  study.add_option("--quad-degree-error", sf.flags.quad_degree_error,
                   "quadrature degree for error integrals (2, 4, 6, 8)");
  study.add_option("--newton-abs-tol", sf.flags.newton.abs_tol,
                   "Newton absolute residual tolerance");
  study.add_option("--newton-rel-tol", sf.flags.newton.rel_tol,
                   "Newton relative residual tolerance");
  study.add_option("--newton-max-iter", sf.flags.newton.max_iter,
                   "Newton iteration cap per step");
  study.add_option("--seed", sf.flags.seed, "rng seed for auxiliary checks");
  study.add_option("--format", sf.flags.format, "output format: csv, json, md");
  study.add_option("--out", sf.flags.out, "output path (default: stdout)");
  study.add_option("--check-tables", sf.flags.check_tables,
                   "compare EOCs (levels >= 4) against the bundled reference "
                   "values with this tolerance");
  study.add_flag("--verbose", sf.flags.verbose, "per-step progress on stderr");
}

// Command-line flags override file values only when actually given.
// Derived defaults stay unresolved so callers can layer more overrides.
StudyConfig merge_config_raw(const StudyFlags& sf) {
  StudyConfig cfg;
  if (!sf.config_path.empty()) cfg = parse_config_file(sf.config_path);
  const CLI::App& cmd = *sf.cmd;
  const auto given = [&](const char* name) {
    return cmd.get_option(name)->count() > 0;
  };
  if (given("--p-minus")) cfg.p_minus = sf.flags.p_minus;
  if (given("--p-plus")) cfg.p_plus = sf.flags.p_plus;
  if (given("--alpha")) cfg.alpha = sf.flags.alpha;
  if (given("--beta")) cfg.beta = sf.flags.beta;
  if (given("--gamma")) cfg.gamma = sf.flags.gamma;
  if (given("--case")) cfg.pressure_case = sf.flags.pressure_case;
  if (given("--delta")) cfg.delta = sf.flags.delta;
  if (given("--nu0")) cfg.nu0 = sf.flags.nu0;
  if (given("--T")) cfg.T = sf.flags.T;
  if (given("--max-level")) cfg.max_level = sf.flags.max_level;
  if (given("--quad-degree-assembly"))
    cfg.quad_degree_assembly = sf.flags.quad_degree_assembly;
  if (given("--quad-degree-error"))
    cfg.quad_degree_error = sf.flags.quad_degree_error;
  if (given("--newton-abs-tol")) cfg.newton.abs_tol = sf.flags.newton.abs_tol;
  if (given("--newton-rel-tol")) cfg.newton.rel_tol = sf.flags.newton.rel_tol;
  if (given("--newton-max-iter"))
    cfg.newton.max_iter = sf.flags.newton.max_iter;
  if (given("--seed")) cfg.seed = sf.flags.seed;
  if (given("--format")) cfg.format = sf.flags.format;
  if (given("--out")) cfg.out = sf.flags.out;
  if (given("--check-tables")) cfg.check_tables = sf.flags.check_tables;
  if (given("--verbose")) cfg.verbose = true;
  return cfg;
}

StudyConfig merge_config(const StudyFlags& sf) {
  StudyConfig cfg = merge_config_raw(sf);
  cfg.finalize();
  return cfg;
}

int run_study_command(const StudyFlags& sf) {
  StudyConfig cfg;
  try {
    cfg = merge_config(sf);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  }
  // Probe the output path now so a bad path fails before the solve, not after.
  if (!cfg.out.empty()) {
    std::ofstream probe(cfg.out, std::ios::binary | std::ios::app);
    if (!probe) {
      std::cerr << "config error: cannot open output path " << cfg.out << "\n";
      return 2;
    }
  }
  StudyReport report;
  try {
    report = run_study(cfg, &std::cerr);
  } catch (const SolverFailure& err) {
    std::cerr << "solver failure at step " << err.step << " (t=" << err.t
              << ", residual=" << err.residual << "): " << err.what() << "\n";
    return 3;
  }
  const std::string text = emit(report, cfg.format);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      std::cerr << "config error: cannot open output path " << cfg.out << "\n";
      return 2;
    }
    file << text;
  }
  if (std::isfinite(cfg.check_tables)) {
    if (cfg.max_level < 4 ||
        !reference_cell_exists(cfg.pressure_case, cfg.alpha, cfg.p_minus)) {
      std::cerr << "config error: --check-tables needs max_level >= 4 and a "
                   "tabulated (case, alpha, p_minus) cell\n";
      return 2;
    }
    std::string lines;
    const int failures = check_against_reference(report, cfg.check_tables, lines);
    std::cerr << lines;
    if (failures > 0) {
      std::cerr << failures << " EOC value(s) outside tolerance "
                << cfg.check_tables << "\n";
      return 4;
    }
    std::cerr << "all tabulated EOC values within tolerance " << cfg.check_tables
              << "\n";
  }
  return 0;
}

// One cell per non-comment line, whitespace-separated key=value overrides on
// top of the base configuration. Invalid cells are skipped with the reason
// logged; solver failures are logged and reported through the exit code.
int run_matrix_command(const StudyFlags& sf, const std::string& grid_path,
                       const std::string& out_dir) {
  StudyConfig base;
  try {
    base = merge_config_raw(sf);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  }
  std::ifstream grid(grid_path);
  if (!grid) {
    std::cerr << "config error: cannot open matrix file " << grid_path << "\n";
    return 2;
  }
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
      std::cerr << "config error: cannot create output directory " << out_dir
                << ": " << ec.message() << "\n";
      return 2;
    }
  }
  int cell_index = 0, failures = 0;
  std::string line;
  while (std::getline(grid, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> entries;
    for (std::string tok; tokens >> tok;) entries.push_back(tok);
    if (entries.empty()) continue;
    ++cell_index;
    StudyConfig cfg = base;
    try {
      for (const std::string& entry : entries) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
          throw ConfigError("expected key=value, got '" + entry + "'");
        apply_config_entry(cfg, entry.substr(0, eq), entry.substr(eq + 1));
      }
      cfg.finalize();
    } catch (const ConfigError& err) {
      std::cerr << "cell " << cell_index << " skipped (" << line
                << "): " << err.what() << "\n";
      continue;
    }
    StudyReport report;
    try {
      report = run_study(cfg, &std::cerr);
    } catch (const SolverFailure& err) {
      std::cerr << "cell " << cell_index << " solver failure at step "
                << err.step << ": " << err.what() << "\n";
      ++failures;
      continue;
    }
    const std::string text = emit(report, cfg.format);
    if (out_dir.empty()) {
      std::cout << "# cell " << cell_index << ": " << line << "\n"
                << text << "\n";
    } else {
      std::ostringstream name;
      name << out_dir << "/cell" << cell_index << "_p" << cfg.p_minus << "_a"
           << cfg.alpha << "_c" << cfg.pressure_case << "."
           << (cfg.format == "md" ? "md" : cfg.format);
      std::ofstream file(name.str(), std::ios::binary);
      if (!file) {
        std::cerr << "config error: cannot open output path " << name.str()
                  << "\n";
        return 2;
      }
      file << text;
    }
  }
  return failures > 0 ? 3 : 0;
}

int run_verify_command(unsigned long seed) {
  const std::vector<CheckResult> results = run_selfchecks(seed);
  bool all = true;
  for (const CheckResult& r : results) {
    std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.name << ": "
              << r.detail << "\n";
    all = all && r.pass;
  }
  std::cout << (all ? "verify: all checks passed\n"
                    : "verify: at least one check failed\n");
  return all ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"finite element convergence studies for an unsteady "
               "variable-exponent Stokes system"};
  app.require_subcommand(1);

  StudyFlags sf;
  CLI::App* study = app.add_subcommand(
      "study", "run a refinement study and report errors and orders");
  add_study_options(*study, sf);

  StudyFlags mf;
  std::string grid_path, out_dir;
  CLI::App* matrix = app.add_subcommand(
      "matrix", "run a grid of studies listed one per line in a cell file");
  add_study_options(*matrix, mf);
  matrix->add_option("--file", grid_path, "cell file: key=value overrides")
      ->required();
  matrix->add_option("--out-dir", out_dir,
                     "write one report per cell here (default: stdout)");

  unsigned long verify_seed = 42;
  CLI::App* verify =
      app.add_subcommand("verify", "run the built-in property checks");
  verify->add_option("--seed", verify_seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 2;
  }

  if (study->parsed()) return run_study_command(sf);
  if (matrix->parsed()) return run_matrix_command(mf, grid_path, out_dir);
  if (verify->parsed()) return run_verify_command(verify_seed);
  return 2;
}

} // namespace varpstokes
