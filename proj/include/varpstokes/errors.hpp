#ifndef VARPSTOKES_ERRORS_HPP
#define VARPSTOKES_ERRORS_HPP

#include <vector>

#include "varpstokes/mms.hpp"
#include "varpstokes/time_newton.hpp"

namespace varpstokes {

// Distances between the discrete solution (piecewise constant on slabs) and
// the nodal sampling of the exact fields, all under the same frozen exponent
// the solver used:
//   e_F      = || F(Dv_h) - F(Dv) ||_{L2(space-time)}
//   e_Fstar  = || F*(S(Dv_h)) - F*(S(Dv)) ||_{L2(space-time)}
//   e_phistar = square root of the accumulated shifted conjugate modular of
//              the pressure error (norm-like scale)
//   e_L2     = max over time nodes of || v_h - v ||_{L2}
struct ErrorSet {
  double e_F = 0.0;
  double e_Fstar = 0.0;
  double e_phistar = 0.0;
  double e_L2 = 0.0;
};

ErrorSet compute_errors(const TaylorHoodSpace& space,
                        const ManufacturedSolution& data,
                        const SlabHistory& history, int quad_degree = 8);

// Experimental order per refinement step: log(e_n/e_{n-1}) / log(s_n/s_{n-1})
// with s_n = h_n + tau_n. Entry 0 and any undefined entry are NaN, never 0.
std::vector<double> eoc_sequence(const std::vector<double>& errors,
                                 const std::vector<double>& scales);

} // namespace varpstokes

#endif
