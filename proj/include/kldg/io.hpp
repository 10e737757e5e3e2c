#pragma once

#include <map>
#include <string>
#include <vector>

#include "kldg/dg.hpp"
#include "kldg/problems.hpp"

namespace kldg {

/// Point-mean L1 norm: sum of |a - b| over nodes divided by the node count.
double l1_error(std::span<const double> sol, std::span<const double> ref);
double linf_error(std::span<const double> sol, std::span<const double> ref);

/// Per-quantity point-mean L1 errors (rho, m, E, U, P, e, s) plus rho_linf
/// against a pointwise reference.
std::map<std::string, double> norms_vs_reference(
    const Field& u, const Mesh& mesh, const Basis& basis, const GasModel& gas,
    const std::function<Prim(const std::array<double, 2>&)>& ref);

struct ConvergenceResult {
  std::vector<double> rates;  // pairwise log(e_{i-1}/e_i)/log(N_i/N_{i-1})
  double average = 0.0;       // least-squares slope of log e versus log N
};

ConvergenceResult convergence_rates(const std::vector<double>& errors,
                                    const std::vector<double>& ns);

/// CSV solution dump: one row per node with coordinates, conserved and
/// primitive quantities, specific internal energy, physical entropy, and the
/// element's latest limiting factor.
void write_solution_csv(const std::string& path, const Field& u, const Mesh& mesh,
                        const Basis& basis, const GasModel& gas,
                        const std::vector<double>& elem_alpha);

/// Little-endian binary grid file for 2D fields (magic "KLDG"). Layout:
/// magic[4], u32 version=1, u32 d, u32 p, u32 nx_elem, u32 ny_elem, then f64
/// arrays: global x node coordinates, global y node coordinates, then rho,
/// mx, my, E over nodes in row-major order (y rows, x fastest).
void write_solution_binary(const std::string& path, const Field& u, const Mesh& mesh,
                           const Basis& basis);

struct BinaryGrid {
  std::uint32_t version = 0, d = 0, p = 0, nx = 0, ny = 0;
  std::vector<double> x, y, rho, mx, my, E;
};
BinaryGrid read_solution_binary(const std::string& path);

/// Sum of element volume times element mean (total conserved quantities).
State total_conserved(const Field& u, const Mesh& mesh, const Basis& basis);

}  // namespace kldg
