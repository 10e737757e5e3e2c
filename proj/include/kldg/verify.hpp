#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kldg/kinetic_bounds.hpp"

namespace kldg {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Independent midpoint-rule integration of the same relaxed envelopes over
/// the same truncated domain (1D). Used as the oracle the production
/// quadrature is checked against; deliberately shares no code with
/// integrate_bounds.
BoundsSet bounds_bruteforce_1d(std::span<const State> stencil, double k, double r_fac,
                               const GasModel& gas, long n_nodes);

/// Property suites: constant-state preservation (1D and 2D), positivity of
/// the bounds box, Riemann-averaged state containment, the limiter/pressure
/// contract, and the brute-force quadrature oracle. `quick` shrinks the
/// sample counts for interactive use.
std::vector<CheckResult> verify_properties(std::uint64_t seed, bool quick);

}  // namespace kldg
