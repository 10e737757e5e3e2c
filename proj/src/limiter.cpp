#include "kldg/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kldg {

double compute_alpha(std::span<const double> nodal_vals, double mean, double lo, double hi,
                     double eps) {
  double vmin = std::numeric_limits<double>::max();
  double vmax = std::numeric_limits<double>::lowest();
  for (const double v : nodal_vals) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  const double dmax = vmax - mean;
  const double dmin = vmin - mean;
  if (std::abs(dmax) < eps || std::abs(dmin) < eps) return 0.0;
  const double a_hi = std::abs((hi - mean) / dmax);
  const double a_lo = std::abs((lo - mean) / dmin);
  return std::min({1.0, a_hi, a_lo});
}

void squeeze(std::span<State> nodes, const State& mean, double alpha, int d) {
  if (alpha == 1.0) return;
  const int nc = d + 2;
  for (State& w : nodes) {
    for (int c = 0; c < nc; ++c) {
      double& v = w.comp(c, d);
      v = mean.comp(c, d) + alpha * (v - mean.comp(c, d));
    }
  }
}

namespace {

// Mean-in-box check with a small relative tolerance: quadrature-level
// roundoff may push a strict-bound box past the mean by ~1e-12 even for a
// constant state, which is not a CFL violation. Within tolerance the box is
// widened to include the mean; beyond it the run aborts.
constexpr double mean_box_rtol = 1e-7;

bool mean_in_box(double mean, double& lo, double& hi) {
  if (mean >= lo && mean <= hi) return true;
  const double scale = std::max({std::abs(lo), std::abs(hi), std::abs(mean)});
  const double tol = mean_box_rtol * scale;
  if (mean < lo - tol || mean > hi + tol) return false;
  lo = std::min(lo, mean);
  hi = std::max(hi, mean);
  return true;
}

}  // namespace

LimiterReport limit_element(std::span<State> nodes, const State& mean, const BoundsSet& bounds,
                            const GasModel& gas, const LimiterConfig& cfg) {
  const int d = gas.d;
  const int nc = d + 2;
  LimiterReport rep;
  BoundsSet box = bounds;

  std::array<double, 4> alphas{1.0, 1.0, 1.0, 1.0};
  bool all_flat = true;
  for (int c = 0; c < nc; ++c) {
    double lo = box.lo.comp(c, d);
    double hi = box.hi.comp(c, d);
    const double m = mean.comp(c, d);
    if (!mean_in_box(m, lo, hi)) {
      throw bounds_violation_error("limit_element: mean outside bounds for component " +
                                   std::to_string(c) + " (mean=" + std::to_string(m) +
                                   ", box=[" + std::to_string(lo) + ", " + std::to_string(hi) +
                                   "])");
    }
    double vmin = std::numeric_limits<double>::max();
    double vmax = std::numeric_limits<double>::lowest();
    for (const State& w : nodes) {
      const double v = w.comp(c, d);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    const double dmax = vmax - m;
    const double dmin = vmin - m;
    const bool flat = std::abs(dmax) < cfg.eps || std::abs(dmin) < cfg.eps;
    if (flat) {
      alphas[c] = 0.0;
    } else {
      all_flat = false;
      alphas[c] = std::min({1.0, std::abs((hi - m) / dmax), std::abs((lo - m) / dmin)});
    }
  }
  rep.component_alphas = alphas;

  if (cfg.coupled) {
    double amin = 1.0;
    for (int c = 0; c < nc; ++c) amin = std::min(amin, alphas[c]);
    rep.alpha_min = amin;
    // A fully flat element squeezes to values already within eps of the
    // mean; skipping the arithmetic keeps constant regions bit-exact.
    if (amin < 1.0 && !all_flat) {
      squeeze(nodes, mean, amin, d);
      rep.changed = true;
    }
  } else {
    double amin = 1.0;
    for (int c = 0; c < nc; ++c) amin = std::min(amin, alphas[c]);
    rep.alpha_min = amin;
    if (!all_flat && amin < 1.0) {
      for (State& w : nodes) {
        for (int c = 0; c < nc; ++c) {
          if (alphas[c] == 1.0) continue;
          double& v = w.comp(c, d);
          v = mean.comp(c, d) + alphas[c] * (v - mean.comp(c, d));
        }
      }
      rep.changed = true;
    }
  }
  return rep;
}

std::optional<double> pressure_floor_pass(std::span<State> nodes, const State& mean,
                                          const GasModel& gas, double floor) {
  const double p_mean = pressure(mean, gas);
  if (!(p_mean > floor))
    throw bounds_violation_error("pressure_floor_pass: mean pressure " +
                                 std::to_string(p_mean) + " at or below floor");
  double p_min = std::numeric_limits<double>::max();
  double scale = 0.0;
  for (const State& w : nodes) {
    if (w.rho > 0.0) {
      p_min = std::min(p_min, pressure(w, gas));
      scale = std::max(scale, std::abs(w.E) + kinetic_energy(w));
    } else {
      p_min = std::min(p_min, -1.0);
      scale = std::max(scale, std::abs(w.E));
    }
  }
  if (p_min >= floor) return std::nullopt;
  // Aim slightly above the floor: the pressure of the squeezed state is the
  // difference of O(E)-sized terms, so cancellation noise of a few ulp of
  // that scale must not push the result back under the floor.
  const double target =
      std::min(p_mean, floor + 32.0 * std::numeric_limits<double>::epsilon() *
                                   (gas.gamma - 1.0) * scale);
  double alpha_p = std::abs((target - p_mean) / (p_min - p_mean));
  alpha_p = std::clamp(alpha_p, 0.0, 1.0);
  squeeze(nodes, mean, alpha_p, gas.d);
  return alpha_p;
}

}  // namespace kldg
