#ifndef VARPSTOKES_SELFCHECK_HPP
#define VARPSTOKES_SELFCHECK_HPP

#include <string>
#include <vector>

namespace varpstokes {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Property suites behind `varp-stokes verify`: sampled stress/flux
// equivalences, finite-difference oracles, quadrature exactness, mesh
// invariants, the discrete integration-by-parts identity, and bitwise
// determinism of a small study. Deterministic for a fixed seed.
std::vector<CheckResult> run_selfchecks(unsigned long seed);

} // namespace varpstokes

#endif
