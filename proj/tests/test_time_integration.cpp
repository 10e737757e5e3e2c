#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kldg/driver.hpp"
#include "kldg/io.hpp"
#include "test_support.hpp"

using namespace kldg;
using kldg::test::close;

TEST_CASE("compute_dt formula") {
  const GasModel gas(1.4, 1);
  const Basis basis(2);
  Mesh mesh;
  mesh.d = 1;
  mesh.nelem = {10, 1};
  mesh.xmin = {0.0, 0.0};
  mesh.xmax = {1.0, 0.0};
  Field u(mesh, basis);
  for (auto& w : u.v) w = prim_to_cons({1.0, 0.0, 0.0, 1.0}, gas);
  const double dt = compute_dt(u, mesh, basis, 0.5, gas);
  CHECK(close(dt, 0.5 * 0.1 / (5.0 * std::sqrt(1.4)), 1e-12));
  CHECK(close(dt, 8.452e-3, 1e-3));

  // halving h halves dt
  mesh.nelem = {20, 1};
  Field u2(mesh, basis);
  for (auto& w : u2.v) w = prim_to_cons({1.0, 0.0, 0.0, 1.0}, gas);
  CHECK(close(compute_dt(u2, mesh, basis, 0.5, gas), 0.5 * dt, 1e-12));
}

TEST_CASE("ssp-rk3 stage arithmetic on the scalar decay mode") {
  // the three-stage combination used by the stepper, applied to u' = -u
  const double dt = 0.1;
  double u = 1.0;
  const double u1 = u + dt * (-u);
  const double u2 = 0.75 * u + 0.25 * (u1 + dt * (-u1));
  const double u3 = (1.0 / 3.0) * u + (2.0 / 3.0) * (u2 + dt * (-u2));
  // amplification factor 1 - z + z^2/2 - z^3/6 at z = 0.1
  CHECK(close(u3, 1.0 - 0.1 + 0.005 - 0.1 * 0.1 * 0.1 / 6.0, 1e-15));
  CHECK(close(u3, 0.90483333333333332, 1e-14));
}

TEST_CASE("free stream stays bitwise constant through full steps") {
  RunConfig cfg;
  cfg.case_name = "pulse";
  cfg.p = 3;
  cfg.elements = {8, 1};
  cfg.t_end = 0.05;
  cfg.kinetic.k_extent = 8.0;
  cfg.kinetic.n_per_axis = 256;
  // overwrite the initial condition by running the constant-density branch:
  // far from the pulse the field is exactly constant, so pick elements away
  // from the bump and check they do not move for a few steps
  const RunReport rep = run(cfg, false);
  CHECK(rep.final_time == 0.05);
  // elements near the domain edge were uniform at t=0 and the waves cannot
  // reach them by t=0.05 (speed ~2.2, distance > 0.2)
  const Basis basis(3);
  const GasModel gas(1.4, 1);
  const Mesh mesh = rep.mesh;
  const State expect = prim_to_cons({1.0, 1.0, 0.0, 1.0}, gas);
  auto edge = rep.solution.elem(0);
  for (const State& w : edge) {
    CHECK(w.rho == expect.rho);
    CHECK(w.mx == expect.mx);
    CHECK(w.E == expect.E);
  }
  (void)mesh;
  (void)basis;
}

TEST_CASE("dt_fixed override and exact landing on t_end") {
  RunConfig cfg;
  cfg.case_name = "sod";
  cfg.p = 1;
  cfg.elements = {16, 1};
  cfg.t_end = 0.01;
  cfg.dt_fixed = 0.0003;
  cfg.kinetic.k_extent = 8.0;
  cfg.kinetic.n_per_axis = 128;
  const RunReport rep = run(cfg, false);
  CHECK(rep.final_time == 0.01);
  CHECK(rep.steps == 34);  // 33 full steps + one clamped partial
}

TEST_CASE("conservation on the periodic pulse") {
  RunConfig cfg;
  cfg.case_name = "pulse";
  cfg.p = 2;
  cfg.elements = {20, 1};
  cfg.kinetic.k_extent = 8.0;
  cfg.kinetic.n_per_axis = 512;
  cfg.t_end = 0.0;
  RunReport rep0 = run(cfg, false);
  const Basis basis(2);
  const State tot0 = total_conserved(rep0.solution, rep0.mesh, basis);

  cfg.t_end = 0.08;  // roughly 100 steps at this resolution
  RunReport rep1 = run(cfg, false);
  const State tot1 = total_conserved(rep1.solution, rep1.mesh, basis);
  CHECK(rep1.steps >= 80);
  CHECK(close(tot1.rho, tot0.rho, 1e-11));
  CHECK(close(tot1.mx, tot0.mx, 1e-11));
  CHECK(close(tot1.E, tot0.E, 1e-11));
}

TEST_CASE("intermediate stages stay admissible on the double expansion") {
  RunConfig cfg;
  cfg.case_name = "123";
  cfg.p = 2;
  cfg.elements = {32, 1};
  cfg.t_end = 0.02;
  cfg.kinetic.k_extent = 8.0;
  cfg.kinetic.n_per_axis = 512;
  cfg.check_admissibility = true;
  CHECK_NOTHROW((void)run(cfg, false));
}

TEST_CASE("smooth pulse converges at high order through full steps") {
  // coarse two-point check of the combined space-time convergence
  std::vector<double> errs, ns;
  for (const int n : {10, 20}) {
    RunConfig cfg;
    cfg.case_name = "pulse";
    cfg.p = 3;
    cfg.elements = {n, 1};
    cfg.kinetic.k_extent = 8.0;
    cfg.kinetic.n_per_axis = 512;
    const RunReport rep = run(cfg, false);
    errs.push_back(rep.norms.at("rho_linf"));
    ns.push_back(n);
  }
  const double rate = std::log(errs[0] / errs[1]) / std::log(ns[1] / ns[0]);
  INFO("pulse P3 rate " << rate);
  CHECK(rate > 3.2);
}
