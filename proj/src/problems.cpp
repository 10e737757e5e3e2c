#include "kldg/problems.hpp"

#include <cmath>

namespace kldg {

namespace {

BoundaryCondition dirichlet_const(const Prim& q) {
  BoundaryCondition bc;
  bc.kind = BoundaryCondition::Kind::dirichlet;
  bc.state_fn = [q](const std::array<double, 2>&, const std::array<double, 2>&, double) {
    return q;
  };
  return bc;
}

BoundaryCondition dirichlet_fn(
    std::function<Prim(const std::array<double, 2>&, const std::array<double, 2>&, double)> fn) {
  BoundaryCondition bc;
  bc.kind = BoundaryCondition::Kind::dirichlet;
  bc.state_fn = std::move(fn);
  return bc;
}

BoundaryCondition slip_wall() {
  BoundaryCondition bc;
  bc.kind = BoundaryCondition::Kind::slip_wall;
  return bc;
}

BoundaryCondition periodic() { return BoundaryCondition{}; }

}  // namespace

std::vector<std::string> case_names() {
  return {"sod", "pulse", "123", "shu_osher", "leblanc", "sedov", "dmr", "rmi", "jet"};
}

CaseSpec make_case(const std::string& name, const std::array<int, 2>& nelem,
                   std::optional<double> gamma) {
  CaseSpec s;
  s.name = name;

  if (name == "sod") {
    s.d = 1;
    s.xmin = {0.0, 0.0};
    s.xmax = {1.0, 0.0};
    s.gamma = gamma.value_or(1.4);
    s.t_end = 0.2;
    s.split_x = 0.5;
    const Prim ql{1.0, 0.0, 0.0, 1.0};
    const Prim qr{0.125, 0.0, 0.0, 0.1};
    s.initial = [ql, qr](const std::array<double, 2>& x) { return x[0] <= 0.5 ? ql : qr; };
    s.bc[0] = dirichlet_const(ql);
    s.bc[1] = dirichlet_const(qr);
    s.reference = ReferenceKind::exact_riemann;
    return s;
  }

  if (name == "pulse") {
    s.d = 1;
    s.xmin = {-0.5, 0.0};
    s.xmax = {0.5, 0.0};
    s.gamma = gamma.value_or(1.4);
    s.t_end = 1.0;
    s.initial = [](const std::array<double, 2>& x) {
      return Prim{1.0 + std::exp(-500.0 * x[0] * x[0]), 1.0, 0.0, 1.0};
    };
    s.bc[0] = periodic();
    s.bc[1] = periodic();
    s.reference = ReferenceKind::analytic_pulse;
    return s;
  }

  if (name == "123") {
    s.d = 1;
    s.xmin = {0.0, 0.0};
    s.xmax = {1.0, 0.0};
    s.gamma = gamma.value_or(1.4);
    s.t_end = 0.15;
    s.split_x = 0.5;
    const Prim ql{1.0, -2.0, 0.0, 0.4};
    const Prim qr{1.0, 2.0, 0.0, 0.4};
    s.initial = [ql, qr](const std::array<double, 2>& x) { return x[0] <= 0.5 ? ql : qr; };
    s.bc[0] = dirichlet_const(ql);
    s.bc[1] = dirichlet_const(qr);
    s.reference = ReferenceKind::exact_riemann;
    return s;
  }

  if (name == "shu_osher") {
    s.d = 1;
    s.xmin = {0.0, 0.0};
    s.xmax = {10.0, 0.0};
    s.gamma = gamma.value_or(1.4);
    s.t_end = 1.8;
    s.split_x = 1.0;
    const Prim ql{3.857143, 2.629369, 0.0, 10.333333};
    s.initial = [ql](const std::array<double, 2>& x) {
      if (x[0] <= 1.0) return ql;
      return Prim{1.0 + 0.2 * std::sin(5.0 * x[0]), 0.0, 0.0, 1.0};
    };
    s.bc[0] = dirichlet_const(ql);
    s.bc[1] = dirichlet_const(Prim{1.0 + 0.2 * std::sin(50.0), 0.0, 0.0, 1.0});
    s.reference = ReferenceKind::godunov_reference;
    return s;
  }

  if (name == "leblanc") {
    s.d = 1;
    s.xmin = {0.0, 0.0};
    s.xmax = {9.0, 0.0};
    s.gamma = gamma.value_or(5.0 / 3.0);
    s.t_end = 6.0;
    s.split_x = 3.0;
    const double g1 = s.gamma - 1.0;
    const Prim ql{1.0, 0.0, 0.0, g1 * 1e-1};
    const Prim qr{1e-3, 0.0, 0.0, g1 * 1e-10};
    s.initial = [ql, qr](const std::array<double, 2>& x) { return x[0] <= 3.0 ? ql : qr; };
    s.bc[0] = dirichlet_const(ql);
    s.bc[1] = dirichlet_const(qr);
    s.reference = ReferenceKind::exact_riemann;
    return s;
  }

  if (name == "sedov") {
    s.d = 2;
    s.xmin = {-1.2, -1.2};
    s.xmax = {1.2, 1.2};
    s.gamma = gamma.value_or(1.4);
    s.t_end = 1.0;
    if (nelem[0] % 2 == 0 || nelem[1] % 2 == 0)
      throw config_error("sedov: element counts must be odd so one element is centered at 0");
    const double hx = 2.4 / nelem[0];
    const double hy = 2.4 / nelem[1];
    const double V0 = hx * hy;
    const double e0 = 0.244816;
    const double Pa = 1e-6;
    const double P0 = 4.0 * (s.gamma - 1.0) * 1.0 * e0 / V0;
    const double half_hx = 0.5 * hx, half_hy = 0.5 * hy;
    s.initial = [=](const std::array<double, 2>& x) {
      const bool center = std::abs(x[0]) < half_hx && std::abs(x[1]) < half_hy;
      return Prim{1.0, 0.0, 0.0, center ? P0 : Pa};
    };
    const Prim ambient{1.0, 0.0, 0.0, Pa};
    for (int f = 0; f < 4; ++f) s.bc[f] = dirichlet_const(ambient);
    s.default_flux = RiemannChoice::hll;
    return s;
  }

  if (name == "dmr") {
    s.d = 2;
    s.xmin = {0.0, 0.0};
    s.xmax = {4.0, 1.0};
    s.gamma = gamma.value_or(1.4);
    s.t_end = 0.2;
    const Prim ql{8.0, 7.14471, -4.125, 116.5};
    const Prim qr{1.4, 0.0, 0.0, 1.0};
    const double tan30 = std::tan(30.0 * M_PI / 180.0);
    const double shock_rate = 10.0 / std::cos(30.0 * M_PI / 180.0);
    s.initial = [=](const std::array<double, 2>& x) {
      return x[0] < 1.0 / 6.0 + tan30 * x[1] ? ql : qr;
    };
    s.bc[0] = dirichlet_const(ql);
    s.bc[1] = dirichlet_const(qr);
    BoundaryCondition bottom;
    bottom.kind = BoundaryCondition::Kind::mixed_dirichlet_slip;
    bottom.x_split = 1.0 / 6.0;
    bottom.state_fn = [ql](const std::array<double, 2>&, const std::array<double, 2>&, double) {
      return ql;
    };
    s.bc[2] = bottom;
    s.bc[3] = dirichlet_fn(
        [=](const std::array<double, 2>& pos, const std::array<double, 2>&, double t) {
          return pos[0] <= 1.0 / 6.0 + tan30 * 1.0 + shock_rate * t ? ql : qr;
        });
    return s;
  }

  if (name == "rmi") {
    s.d = 2;
    s.xmin = {0.0, 0.0};
    s.xmax = {0.5, 4.0};
    s.gamma = gamma.value_or(1.4);  // gamma is not printed for this case
    s.t_end = 2.0;
    const Prim qb{0.25, 0.0, 0.0, 1.0};
    const Prim qm{1.0, 0.0, 0.0, 1.0};
    const Prim qt{8.0 / 3.0, 0.0, 0.0, 4.5};
    s.initial = [=](const std::array<double, 2>& x) {
      const double interface_y = 2.0 - 0.5 * std::cos(2.0 * M_PI * x[0]);
      if (x[1] >= interface_y) return qt;
      if (x[1] >= 0.5) return qm;
      return qb;
    };
    s.bc[0] = slip_wall();
    s.bc[1] = slip_wall();
    s.bc[2] = dirichlet_const(qb);
    s.bc[3] = dirichlet_const(qt);
    return s;
  }

  if (name == "jet") {
    s.d = 2;
    s.xmin = {0.0, 0.0};
    s.xmax = {0.5, 1.5};
    s.gamma = gamma.value_or(5.0 / 3.0);
    s.t_end = 0.002;
    const double g = s.gamma;
    const Prim ambient{0.1 * g, 0.0, 0.0, 1.0};
    const Prim inlet{g, 0.0, 800.0, 1.0};
    s.initial = [ambient](const std::array<double, 2>&) { return ambient; };
    s.bc[0] = slip_wall();  // symmetry axis
    s.bc[1] = dirichlet_const(ambient);
    // Inlet on faces whose center lies at x <= 0.05, ambient elsewhere.
    s.bc[2] = dirichlet_fn(
        [=](const std::array<double, 2>&, const std::array<double, 2>& fc, double) {
          return fc[0] <= 0.05 ? inlet : ambient;
        });
    s.bc[3] = dirichlet_const(ambient);
    return s;
  }

  throw config_error("unknown case: " + name);
}

std::optional<Prim> reference_solution(const CaseSpec& spec, double x, double t,
                                       const GasModel& gas) {
  switch (spec.reference) {
    case ReferenceKind::exact_riemann: {
      const Prim ql = spec.initial({spec.xmin[0], 0.0});
      const Prim qr = spec.initial({spec.xmax[0], 0.0});
      if (t <= 0.0) return x <= spec.split_x ? ql : qr;
      return exact_riemann(ql, qr, gas, (x - spec.split_x) / t);
    }
    case ReferenceKind::analytic_pulse: {
      const double L = spec.xmax[0] - spec.xmin[0];
      double xs = x - t;
      xs -= L * std::floor((xs - spec.xmin[0]) / L);
      return spec.initial({xs, 0.0});
    }
    case ReferenceKind::godunov_reference:
    case ReferenceKind::none:
      return std::nullopt;
  }
  return std::nullopt;
}

Mesh make_mesh(const CaseSpec& spec, const std::array<int, 2>& nelem) {
  Mesh m;
  m.d = spec.d;
  m.nelem = {nelem[0], spec.d == 2 ? nelem[1] : 1};
  if (m.nelem[0] < 1 || (spec.d == 2 && m.nelem[1] < 1))
    throw config_error("make_mesh: element counts must be positive");
  m.xmin = spec.xmin;
  m.xmax = spec.xmax;
  m.periodic[0] = spec.bc[0].kind == BoundaryCondition::Kind::periodic;
  if (spec.d == 2) m.periodic[1] = spec.bc[2].kind == BoundaryCondition::Kind::periodic;
  return m;
}

}  // namespace kldg
