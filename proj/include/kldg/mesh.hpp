#pragma once

#include <array>
#include <functional>

#include "kldg/euler.hpp"

namespace kldg {

/// Boundary treatment for one side of the domain. Dirichlet states may
/// depend on position and time; `mixed` applies the Dirichlet state where
/// x < x_split and a slip wall elsewhere (double Mach reflection bottom).
struct BoundaryCondition {
  enum class Kind { periodic, dirichlet, slip_wall, mixed_dirichlet_slip };
  Kind kind = Kind::periodic;
  std::function<Prim(const std::array<double, 2>& pos, const std::array<double, 2>& face_center,
                     double t)>
      state_fn;
  double x_split = 0.0;
};

/// Ghost state seen across a physical boundary face. `axis`/`sign` give the
/// outward normal; `pos` is the face node position, `fc` the face center.
State boundary_state(const BoundaryCondition& bc, const State& interior,
                     const std::array<double, 2>& pos, const std::array<double, 2>& fc, int axis,
                     int sign, double t, const GasModel& gas);

/// Uniform Cartesian mesh of segments (d=1) or quadrilaterals (d=2).
/// Sides are indexed 0:x-min, 1:x-max, 2:y-min, 3:y-max.
struct Mesh {
  int d = 1;
  std::array<int, 2> nelem{1, 1};
  std::array<double, 2> xmin{};
  std::array<double, 2> xmax{};
  std::array<bool, 2> periodic{false, false};

  double h(int axis) const { return (xmax[axis] - xmin[axis]) / nelem[axis]; }
  int n_total() const { return nelem[0] * (d == 2 ? nelem[1] : 1); }
  int flat(int i, int j) const { return j * nelem[0] + i; }
  int ei(int e) const { return e % nelem[0]; }
  int ej(int e) const { return e / nelem[0]; }
  double center(int axis, int idx) const { return xmin[axis] + (idx + 0.5) * h(axis); }

  /// Flat index of the neighbor across side `f` of element e, or -1 at a
  /// physical boundary.
  int neighbor(int e, int f) const {
    int i = ei(e), j = ej(e);
    const int axis = f / 2;
    const int dir = (f % 2 == 0) ? -1 : 1;
    int& c = axis == 0 ? i : j;
    c += dir;
    const int n = nelem[axis];
    if (c < 0 || c >= n) {
      if (!periodic[axis]) return -1;
      c = (c + n) % n;
    }
    return flat(i, j);
  }

  double volume() const {
    return d == 1 ? h(0) : h(0) * h(1);
  }
};

}  // namespace kldg
