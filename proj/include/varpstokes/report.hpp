#ifndef VARPSTOKES_REPORT_HPP
#define VARPSTOKES_REPORT_HPP

#include <string>

#include "varpstokes/study.hpp"

namespace varpstokes {

inline constexpr const char* kVersion = "0.1.0";

// Rate the convergence theory predicts for the gradient-type quantities:
// case 1: min(1, p_plus'/2) * alpha, case 2: alpha.
double expected_rate(const StudyConfig& cfg);

std::string to_csv(const StudyReport& report);
std::string to_json(const StudyReport& report); // deterministic byte output
std::string to_markdown(const StudyReport& report);

std::string emit(const StudyReport& report, const std::string& format);

// Reference orders for the bundled study grid (quantities 0:F 1:Fstar
// 2:phistar 3:L2). Returns NaN when the cell or level is not tabulated.
double reference_eoc(int quantity, int pressure_case, double alpha,
                     double p_minus, int level);
bool reference_cell_exists(int pressure_case, double alpha, double p_minus);

// Compares computed EOCs (levels >= 4) against the reference values.
// Returns the number of entries outside the tolerance; details are appended
// to `out` one line each.
int check_against_reference(const StudyReport& report, double tol,
                            std::string& out);

} // namespace varpstokes

#endif
