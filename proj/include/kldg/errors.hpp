#pragma once

#include <stdexcept>
#include <string>

namespace kldg {

/// Base class for all solver errors. Subclasses map to CLI exit codes:
/// config_error -> 2, everything else -> 3.
struct solver_error : std::runtime_error {
  explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A state with non-positive density or internal energy was encountered
/// where an admissible state is required.
struct admissibility_error : solver_error {
  using solver_error::solver_error;
};

/// An element mean escaped its kinetic bounds box. This indicates a
/// CFL/theory violation; the run aborts rather than clipping.
struct bounds_violation_error : solver_error {
  using solver_error::solver_error;
};

/// Riemann data that would generate vacuum in the exact solver.
struct vacuum_error : solver_error {
  using solver_error::solver_error;
};

/// Non-finite intermediate, failed iteration, or similar numerical failure.
struct numerical_error : solver_error {
  using solver_error::solver_error;
};

/// Invalid run configuration (unknown key, bad value, unknown case, ...).
struct config_error : solver_error {
  using solver_error::solver_error;
};

/// File I/O failure, message carries the offending path.
struct io_error : solver_error {
  using solver_error::solver_error;
};

}  // namespace kldg
