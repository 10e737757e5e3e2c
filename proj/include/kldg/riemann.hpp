#pragma once

#include <string>
#include <vector>

#include "kldg/euler.hpp"

namespace kldg {

enum class RiemannChoice { rusanov, hll, hllc, exact };

RiemannChoice riemann_from_string(const std::string& name);
std::string to_string(RiemannChoice c);

/// Numerical interface fluxes, oriented along +axis with wl on the minus
/// side. A flux with outward normal -axis is -flux(wr, wl, axis).
State rusanov_flux(const State& wl, const State& wr, int axis, const GasModel& gas);
State hll_flux(const State& wl, const State& wr, int axis, const GasModel& gas);
State hllc_flux(const State& wl, const State& wr, int axis, const GasModel& gas);
State exact_flux(const State& wl, const State& wr, int axis, const GasModel& gas);

State numerical_flux(RiemannChoice c, const State& wl, const State& wr, int axis,
                     const GasModel& gas);

/// Star-region quantities of the exact Riemann solver (1D along an axis).
struct RiemannStar {
  double p = 0.0;
  double u = 0.0;
  int iterations = 0;
};

/// Newton iteration on the pressure function to relative residual 1e-12.
RiemannStar solve_star(const Prim& ql, const Prim& qr, const GasModel& gas);

/// Exact self-similar Riemann solution sampled at xi = x/t. Tangential
/// velocity is transported passively with the contact.
Prim exact_riemann(const Prim& ql, const Prim& qr, const GasModel& gas, double xi,
                   int axis = 0);

/// First-order Godunov scheme (cell means, exact Riemann interface states)
/// on a uniform 1D mesh with Dirichlet ends; used to generate reference
/// profiles. Returns the final cell means; `centers` receives the cell
/// center coordinates.
std::vector<State> godunov_reference(const std::vector<State>& initial, double x0, double x1,
                                     double t_end, const GasModel& gas, double cfl,
                                     std::vector<double>* centers = nullptr);

}  // namespace kldg
