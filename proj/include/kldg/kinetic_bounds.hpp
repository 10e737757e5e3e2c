#pragma once

#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "kldg/errors.hpp"
#include "kldg/euler.hpp"

namespace kldg {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Settings for the velocity-space quadrature used to turn a stencil of
/// macroscopic states into conserved-variable bounds.
struct KineticConfig {
  double k_extent = 4.0;  ///< half-width of the truncated domain in thermal units
  int n_per_axis = 0;     ///< quadrature nodes per axis; 0 = dimension default
  double r_fac = 1e-3;    ///< relative bound relaxation; 0 = strict bounds

  int nodes_for(int d) const {
    if (n_per_axis > 0) return n_per_axis;
    return d == 1 ? 2048 : 32;
  }

  bool operator==(const KineticConfig&) const = default;

  void validate() const {
    if (!(k_extent >= 2.0)) throw config_error("kinetic: k_extent must be >= 2");
    if (!(r_fac >= 0.0)) throw config_error("kinetic: r_fac must be >= 0");
    if (n_per_axis != 0 && n_per_axis < 2)
      throw config_error("kinetic: n_per_axis must be >= 2");
  }
};

/// Truncated velocity-space box with equispaced nodes (endpoints included)
/// and tensor-product trapezoidal weights. Nodes and weights are implicit:
/// u_i = lo + i*h along each axis, boundary nodes carry half weight.
struct VelocityGrid {
  int d = 1;
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
  std::array<int, 2> n{};

  double spacing(int axis) const { return (hi[axis] - lo[axis]) / (n[axis] - 1); }
  double node(int axis, int i) const { return lo[axis] + i * spacing(axis); }
  double weight_1d(int axis, int i) const {
    const double h = spacing(axis);
    return (i == 0 || i == n[axis] - 1) ? 0.5 * h : h;
  }
  /// Largest particle speed in the box (attained at a corner).
  double u_max() const {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += std::pow(std::max(std::abs(lo[a]), std::abs(hi[a])), 2);
    return std::sqrt(s);
  }
};

/// Componentwise conserved-variable bounds for one element and substage.
struct BoundsSet {
  State lo;
  State hi;
};

/// Equilibrium Maxwell-Boltzmann distribution value of state w at velocity u.
double maxwellian(const State& w, const std::array<double, 2>& u, const GasModel& gas);

/// Per-axis truncated domain [min(U - k sqrt(theta)), max(U + k sqrt(theta))]
/// over the stencil.
std::pair<std::array<double, 2>, std::array<double, 2>> truncated_domain(
    std::span<const State> stencil, double k, const GasModel& gas);

/// Relaxed distribution envelope at a single velocity node.
std::pair<double, double> envelope_at(std::span<const State> stencil,
                                      const std::array<double, 2>& u, double r_fac,
                                      const GasModel& gas);

/// Scratch buffers for integrate_bounds, reused across elements.
struct BoundsWorkspace {
  std::vector<double> ax_nodes[2];   // axis nodes
  std::vector<double> ax_w[2];       // axis trapezoid weights
  std::vector<double> ax_wneg[2];    // half-domain rule for u < 0 (momentum moments)
  std::vector<double> ax_wpos[2];    // half-domain rule for u > 0
  std::vector<double> ax_q[2];       // 0.5 * u^2 per axis
  std::vector<double> zbuf, ebufx, ebufy;
  std::vector<double> gmin, gmax, hmin, hmax;
  std::vector<long double> acc[8];
  // deduplicated member parameters
  std::vector<double> m_rho, m_ux, m_uy, m_theta;
};

/// Integrate the relaxed min/max Maxwellian envelopes of the stencil over a
/// truncated velocity grid into componentwise conserved-variable bounds.
/// The energy moment carries the internal-energy augmentation
/// theta_i*delta/2 per stencil member; momentum moments use the sign-split
/// assignment of the envelopes.
BoundsSet integrate_bounds(std::span<const State> stencil, const KineticConfig& cfg,
                           const GasModel& gas, BoundsWorkspace& ws);

BoundsSet integrate_bounds(std::span<const State> stencil, const KineticConfig& cfg,
                           const GasModel& gas);

/// Velocity grid that integrate_bounds would use for this stencil.
VelocityGrid make_velocity_grid(std::span<const State> stencil, const KineticConfig& cfg,
                                const GasModel& gas);

/// rho_min <- max(rho_min, floor); everything else unchanged.
inline BoundsSet apply_density_floor(BoundsSet b, double floor = 1e-12) {
  b.lo.rho = std::max(b.lo.rho, floor);
  return b;
}

}  // namespace kldg
