#pragma once

#include <array>
#include <optional>
#include <span>

#include "kldg/euler.hpp"
#include "kldg/kinetic_bounds.hpp"

namespace kldg {

struct LimiterConfig {
  bool coupled = true;         ///< limit all components by the minimum factor
  double eps = 1e-13;          ///< guard before the ratio evaluation
  double density_floor = 1e-12;
  double pressure_floor = 1e-12;

  bool operator==(const LimiterConfig&) const = default;
};

struct LimiterReport {
  double alpha_min = 1.0;
  std::optional<double> alpha_pressure;
  std::array<double, 4> component_alphas{1.0, 1.0, 1.0, 1.0};
  bool changed = false;  ///< some nodal value actually moved
};

/// Squeeze factor for one scalar component: min(1, |hi-mean|/|max-mean|,
/// |lo-mean|/|min-mean|), forced to 0 when the nodal spread is below eps.
double compute_alpha(std::span<const double> nodal_vals, double mean, double lo, double hi,
                     double eps = 1e-13);

/// w~(x) = mean + alpha (w(x) - mean) applied to every state in `nodes`.
void squeeze(std::span<State> nodes, const State& mean, double alpha, int d);

/// Limit the element values in `nodes` (interior solution nodes followed by
/// face values; everything the bounds must control) against `bounds`, with
/// the element mean `mean` taken as fixed. Throws bounds_violation_error if
/// the mean lies outside the box by more than roundoff tolerance.
LimiterReport limit_element(std::span<State> nodes, const State& mean, const BoundsSet& bounds,
                            const GasModel& gas, const LimiterConfig& cfg = {});

/// Second limiting pass: if any nodal pressure is below `floor`, squeeze
/// again toward the mean so the minimum nodal pressure reaches the floor.
/// Returns the pressure squeeze factor when a second pass was applied.
std::optional<double> pressure_floor_pass(std::span<State> nodes, const State& mean,
                                          const GasModel& gas, double floor = 1e-12);

}  // namespace kldg
