#pragma once

#include <array>
#include <cmath>
#include <string>

#include "kldg/errors.hpp"

namespace kldg {

/// Ideal-gas model. gamma must lie in (1, 1+2/d] so that the internal
/// degree-of-freedom count delta = 2/(gamma-1) - d is non-negative.
struct GasModel {
  double gamma = 1.4;
  int d = 1;

  GasModel() = default;
  GasModel(double gamma_, int d_) : gamma(gamma_), d(d_) {
    if (d != 1 && d != 2) throw config_error("GasModel: d must be 1 or 2");
    if (!(gamma > 1.0) || !(gamma <= 1.0 + 2.0 / d))
      throw config_error("GasModel: gamma must lie in (1, 1+2/d], got " + std::to_string(gamma));
  }

  double delta() const { return 2.0 / (gamma - 1.0) - d; }
  int ncomp() const { return d + 2; }
};

/// Conserved state (density, momentum, total energy). my is unused in 1D.
struct State {
  double rho = 0.0;
  double mx = 0.0;
  double my = 0.0;
  double E = 0.0;

  double mom(int axis) const { return axis == 0 ? mx : my; }
  double& mom(int axis) { return axis == 0 ? mx : my; }

  /// Component access in the order [rho, m..., E], c in [0, d+2).
  double comp(int c, int d) const {
    if (c == 0) return rho;
    if (c == d + 1) return E;
    return c == 1 ? mx : my;
  }
  double& comp(int c, int d) {
    if (c == 0) return rho;
    if (c == d + 1) return E;
    return c == 1 ? mx : my;
  }

  bool operator==(const State&) const = default;
};

inline State operator+(State a, const State& b) {
  a.rho += b.rho; a.mx += b.mx; a.my += b.my; a.E += b.E;
  return a;
}
inline State operator-(State a, const State& b) {
  a.rho -= b.rho; a.mx -= b.mx; a.my -= b.my; a.E -= b.E;
  return a;
}
inline State operator*(double s, State a) {
  a.rho *= s; a.mx *= s; a.my *= s; a.E *= s;
  return a;
}

/// Primitive state (density, velocity, pressure).
struct Prim {
  double rho = 0.0;
  double ux = 0.0;
  double uy = 0.0;
  double P = 0.0;

  double vel(int axis) const { return axis == 0 ? ux : uy; }

  bool operator==(const Prim&) const = default;
};

inline double kinetic_energy(const State& w) {
  return 0.5 * (w.mx * w.mx + w.my * w.my) / w.rho;
}

/// rho*e = E - |m|^2/(2 rho). Requires rho > 0.
inline double internal_energy(const State& w, const GasModel&) {
  if (!(w.rho > 0.0)) throw admissibility_error("internal_energy: rho <= 0");
  return w.E - kinetic_energy(w);
}

inline double pressure(const State& w, const GasModel& gas) {
  return (gas.gamma - 1.0) * internal_energy(w, gas);
}

/// Physical entropy s = P rho^-gamma.
inline double physical_entropy(const State& w, const GasModel& gas) {
  return pressure(w, gas) * std::pow(w.rho, -gas.gamma);
}

inline bool admissible(const State& w, const GasModel&) {
  if (!(w.rho > 0.0)) return false;
  return w.E - kinetic_energy(w) > 0.0;
}

inline State prim_to_cons(const Prim& q, const GasModel& gas) {
  if (!(q.rho > 0.0) || !(q.P > 0.0))
    throw admissibility_error("prim_to_cons: non-positive rho or P");
  State w;
  w.rho = q.rho;
  w.mx = q.rho * q.ux;
  w.my = gas.d == 2 ? q.rho * q.uy : 0.0;
  const double u2 = q.ux * q.ux + (gas.d == 2 ? q.uy * q.uy : 0.0);
  w.E = q.P / (gas.gamma - 1.0) + 0.5 * q.rho * u2;
  return w;
}

inline Prim cons_to_prim(const State& w, const GasModel& gas) {
  if (!(w.rho > 0.0))
    throw admissibility_error("cons_to_prim: rho = " + std::to_string(w.rho));
  Prim q;
  q.rho = w.rho;
  q.ux = w.mx / w.rho;
  q.uy = gas.d == 2 ? w.my / w.rho : 0.0;
  q.P = pressure(w, gas);
  if (!(q.P > 0.0))
    throw admissibility_error("cons_to_prim: P = " + std::to_string(q.P));
  return q;
}

/// Scaled temperature theta = P/rho (computed on demand, never stored).
inline double scaled_temperature(const State& w, const GasModel& gas) {
  return pressure(w, gas) / w.rho;
}

/// Physical flux along one coordinate axis: [rho u_a, m u_a + P e_a, (E+P) u_a].
inline State flux_axis(const State& w, int axis, const GasModel& gas) {
  const double P = pressure(w, gas);
  if (!(w.rho > 0.0) || !(P > 0.0))
    throw admissibility_error("flux: inadmissible state");
  const double ua = w.mom(axis) / w.rho;
  State f;
  f.rho = w.mom(axis);
  f.mx = w.mx * ua + (axis == 0 ? P : 0.0);
  f.my = gas.d == 2 ? w.my * ua + (axis == 1 ? P : 0.0) : 0.0;
  f.E = (w.E + P) * ua;
  return f;
}

/// Full flux tensor, rows indexed by axis.
inline std::array<State, 2> flux(const State& w, const GasModel& gas) {
  std::array<State, 2> F{};
  for (int a = 0; a < gas.d; ++a) F[a] = flux_axis(w, a, gas);
  return F;
}

/// Davis wavespeed estimate |U.n| + sqrt(gamma P / rho) for a unit normal n.
inline double max_wavespeed(const State& w, const std::array<double, 2>& n, const GasModel& gas) {
  const double P = pressure(w, gas);
  if (!(w.rho > 0.0) || !(P > 0.0))
    throw admissibility_error("max_wavespeed: inadmissible state");
  const double un = (w.mx * n[0] + (gas.d == 2 ? w.my * n[1] : 0.0)) / w.rho;
  return std::abs(un) + std::sqrt(gas.gamma * P / w.rho);
}

inline double sound_speed(const State& w, const GasModel& gas) {
  return std::sqrt(gas.gamma * pressure(w, gas) / w.rho);
}

}  // namespace kldg
