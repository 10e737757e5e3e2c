#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kldg/mesh.hpp"
#include "kldg/riemann.hpp"

namespace kldg {

enum class ReferenceKind { none, exact_riemann, analytic_pulse, godunov_reference };

/// Declarative description of one test case: domain, gas, end time, initial
/// condition, boundaries, default interface flux, and reference solution.
struct CaseSpec {
  std::string name;
  int d = 1;
  std::array<double, 2> xmin{};
  std::array<double, 2> xmax{};
  double gamma = 1.4;
  double t_end = 0.0;
  std::function<Prim(const std::array<double, 2>&)> initial;
  std::array<BoundaryCondition, 4> bc{};
  RiemannChoice default_flux = RiemannChoice::hllc;
  ReferenceKind reference = ReferenceKind::none;
  double split_x = 0.0;  // diaphragm position for Riemann-type references
};

/// Known case names: sod, pulse, 123, shu_osher, leblanc, sedov, dmr, rmi, jet.
std::vector<std::string> case_names();

/// Build a fully populated CaseSpec. Mesh extents/counts are needed by cases
/// whose initial data depend on the mesh (Sedov center element); `gamma`
/// overrides the case default when given.
CaseSpec make_case(const std::string& name, const std::array<int, 2>& nelem,
                   std::optional<double> gamma = std::nullopt);

/// Exact/analytic reference where one exists (1D cases and the pulse).
std::optional<Prim> reference_solution(const CaseSpec& spec, double x, double t,
                                       const GasModel& gas);

/// Mesh consistent with the case domain; validates counts (Sedov needs odd).
Mesh make_mesh(const CaseSpec& spec, const std::array<int, 2>& nelem);

}  // namespace kldg
