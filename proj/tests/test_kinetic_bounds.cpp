#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kldg/kinetic_bounds.hpp"
#include "kldg/verify.hpp"
#include "test_support.hpp"

using namespace kldg;
using kldg::test::close;

TEST_CASE("maxwellian peak values") {
  const GasModel g1(2.0, 1);  // theta = P/rho = 1 for rho = P = 1
  const State w1 = prim_to_cons({1.0, 0.0, 0.0, 1.0}, g1);
  CHECK(close(maxwellian(w1, {0.0, 0.0}, g1), 1.0 / std::sqrt(two_pi), 1e-14));
  CHECK(close(maxwellian(w1, {0.0, 0.0}, g1), 0.398942, 1e-6));

  const GasModel g2(1.4, 2);
  const State w2 = prim_to_cons({1.0, 0.0, 0.0, 1.0}, g2);
  CHECK(close(maxwellian(w2, {0.0, 0.0}, g2), 1.0 / two_pi, 1e-14));
  CHECK(close(maxwellian(w2, {0.0, 0.0}, g2), 0.159155, 1e-6));

  // doubling rho at fixed U, theta doubles g everywhere
  const State w3 = prim_to_cons({2.0, 0.0, 0.0, 2.0}, g1);
  for (const double u : {-1.3, 0.2, 2.4})
    CHECK(close(maxwellian(w3, {u, 0.0}, g1), 2.0 * maxwellian(w1, {u, 0.0}, g1), 1e-14));
}

TEST_CASE("truncated domain") {
  const GasModel gas(1.4, 1);
  const State w0 = prim_to_cons({1.0, 0.0, 0.0, 1.0 / 1.0}, gas);  // theta = 1
  {
    const std::vector<State> s{w0};
    const auto [lo, hi] = truncated_domain(s, 4.0, gas);
    CHECK(close(lo[0], -4.0, 1e-13));
    CHECK(close(hi[0], 4.0, 1e-13));
  }
  {
    // double expansion pair: theta = 0.4
    const std::vector<State> s{prim_to_cons({1.0, -2.0, 0.0, 0.4}, gas),
                               prim_to_cons({1.0, 2.0, 0.0, 0.4}, gas)};
    const auto [lo, hi] = truncated_domain(s, 4.0, gas);
    CHECK(close(lo[0], -2.0 - 4.0 * std::sqrt(0.4), 1e-13));
    CHECK(close(hi[0], 2.0 + 4.0 * std::sqrt(0.4), 1e-13));
    CHECK(close(hi[0], 4.5298, 1e-4));
  }
  // domain always contains every stencil mean velocity
  kldg::test::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<State> s;
    for (int i = 0; i < 5; ++i) s.push_back(rng.state(gas));
    const auto [lo, hi] = truncated_domain(s, 2.0, gas);
    for (const State& w : s) {
      const double U = w.mx / w.rho;
      CHECK(U >= lo[0]);
      CHECK(U <= hi[0]);
    }
  }
}

TEST_CASE("envelope_at") {
  const GasModel gas(1.4, 1);
  const State w0 = prim_to_cons({1.2, 0.3, 0.0, 0.9}, gas);
  const std::vector<State> cs{w0, w0, w0};
  for (const double u : {-2.0, 0.0, 1.5}) {
    const auto [lo0, hi0] = envelope_at(cs, {u, 0.0}, 0.0, gas);
    CHECK(close(lo0, hi0, 1e-15));
    CHECK(close(lo0, maxwellian(w0, {u, 0.0}, gas), 1e-15));
    const auto [lo, hi] = envelope_at(cs, {u, 0.0}, 1e-3, gas);
    CHECK(close(hi / lo, 1.001 / 0.999, 1e-13));
  }
  kldg::test::Rng rng(4);
  const State a = rng.state(gas), b = rng.state(gas);
  const std::vector<State> two{a, b};
  for (const double u : {-1.0, 0.1, 2.2}) {
    const auto [lo, hi] = envelope_at(two, {u, 0.0}, 0.0, gas);
    for (const State& w : two) {
      const double g = maxwellian(w, {u, 0.0}, gas);
      CHECK(lo <= g * (1 + 1e-15));
      CHECK(hi >= g * (1 - 1e-15));
    }
    CHECK(lo > 0.0);
    CHECK(lo <= hi);
  }
}

TEST_CASE("constant stencil reproduces the state (1D, k=8, n=2048)") {
  const GasModel gas(1.4, 1);
  KineticConfig cfg;
  cfg.k_extent = 8.0;
  cfg.n_per_axis = 2048;
  cfg.r_fac = 0.0;
  const State w0 = prim_to_cons({0.7, -0.4, 0.0, 1.3}, gas);
  const std::vector<State> s(7, w0);
  const BoundsSet b = integrate_bounds(s, cfg, gas);
  CHECK(close(b.lo.rho, w0.rho, 1e-12));
  CHECK(close(b.hi.rho, w0.rho, 1e-12));
  CHECK(close(b.lo.mx, w0.mx, 1e-12));
  CHECK(close(b.hi.mx, w0.mx, 1e-12));
  CHECK(close(b.lo.E, w0.E, 1e-12));
  CHECK(close(b.hi.E, w0.E, 1e-12));
}

TEST_CASE("mirror-symmetric stencil gives antisymmetric momentum bounds") {
  const GasModel gas(1.4, 1);
  KineticConfig cfg;
  cfg.k_extent = 8.0;
  cfg.n_per_axis = 2048;
  cfg.r_fac = 0.0;
  const std::vector<State> s{prim_to_cons({1.0, -2.0, 0.0, 0.4}, gas),
                             prim_to_cons({1.0, 2.0, 0.0, 0.4}, gas)};
  const BoundsSet b = integrate_bounds(s, cfg, gas);
  CHECK(close(b.lo.mx, -b.hi.mx, 1e-13, 1e-15));
  CHECK(b.lo.rho > 0.0);
  CHECK(b.lo.E > 0.0);
  // the brute-force oracle agrees to the envelope-kink quadrature level
  const BoundsSet o = bounds_bruteforce_1d(s, 8.0, 0.0, gas, 400000);
  CHECK(close(b.lo.rho, o.lo.rho, 2e-5));
  CHECK(close(b.hi.E, o.hi.E, 2e-5));
}

TEST_CASE("Sod stencil matches the 1e6-node brute-force oracle to 1e-6") {
  const GasModel gas(1.4, 1);
  KineticConfig cfg;
  cfg.k_extent = 8.0;
  cfg.n_per_axis = 2048;
  cfg.r_fac = 0.0;
  const std::vector<State> s{prim_to_cons({1.0, 0.0, 0.0, 1.0}, gas),
                             prim_to_cons({0.125, 0.0, 0.0, 0.1}, gas)};
  const BoundsSet b = integrate_bounds(s, cfg, gas);
  const BoundsSet o = bounds_bruteforce_1d(s, 8.0, 0.0, gas, 1000000);
  for (int c = 0; c < 3; ++c) {
    const double scale =
        std::max(std::abs(o.lo.comp(c, 1)), std::abs(o.hi.comp(c, 1)));
    CHECK(std::abs(b.lo.comp(c, 1) - o.lo.comp(c, 1)) <= 1e-6 * scale);
    CHECK(std::abs(b.hi.comp(c, 1) - o.hi.comp(c, 1)) <= 1e-6 * scale);
  }
}

TEST_CASE("relaxation widens bounds by the relative factor") {
  const GasModel gas(1.4, 1);
  KineticConfig strict, relaxed;
  strict.k_extent = relaxed.k_extent = 8.0;
  strict.n_per_axis = relaxed.n_per_axis = 1024;
  strict.r_fac = 0.0;
  relaxed.r_fac = 1e-3;
  const State w0 = prim_to_cons({1.0, 0.5, 0.0, 0.8}, gas);
  const std::vector<State> s(3, w0);
  const BoundsSet bs = integrate_bounds(s, strict, gas);
  const BoundsSet br = integrate_bounds(s, relaxed, gas);
  CHECK(close(br.lo.rho, 0.999 * bs.lo.rho, 1e-12));
  CHECK(close(br.hi.rho, 1.001 * bs.hi.rho, 1e-12));
  CHECK(close(br.lo.E, 0.999 * bs.lo.E, 1e-12));
  CHECK(close(br.hi.E, 1.001 * bs.hi.E, 1e-12));
}

TEST_CASE("density floor") {
  BoundsSet b;
  b.lo = State{1e-15, -1.0, 0.0, 0.5};
  b.hi = State{2.0, 1.0, 0.0, 3.0};
  const BoundsSet f = apply_density_floor(b);
  CHECK(f.lo.rho == 1e-12);
  CHECK(f.lo.mx == -1.0);
  CHECK(f.hi.rho == 2.0);
  const BoundsSet f2 = apply_density_floor(f);
  CHECK(f2.lo.rho == f.lo.rho);  // idempotent
  BoundsSet c;
  c.lo = State{0.1, 0.0, 0.0, 0.5};
  c.hi = State{1.0, 0.0, 0.0, 1.0};
  CHECK(apply_density_floor(c).lo.rho == 0.1);
}

TEST_CASE("enlarging the stencil never shrinks the box") {
  const GasModel gas(1.4, 1);
  KineticConfig cfg;
  cfg.k_extent = 8.0;
  cfg.n_per_axis = 1024;
  cfg.r_fac = 0.0;
  kldg::test::Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    std::vector<State> s{rng.state(gas), rng.state(gas), rng.state(gas)};
    const BoundsSet b0 = integrate_bounds(s, cfg, gas);
    // the envelope property is a fixed-grid statement: keep the added
    // state's velocity extent inside the existing truncated domain
    const auto [lo, hi] = truncated_domain(s, cfg.k_extent, gas);
    State extra;
    for (;;) {
      extra = rng.state(gas);
      const std::vector<State> one{extra};
      const auto [elo, ehi] = truncated_domain(one, cfg.k_extent, gas);
      if (elo[0] >= lo[0] && ehi[0] <= hi[0]) break;
    }
    s.push_back(extra);
    const BoundsSet b1 = integrate_bounds(s, cfg, gas);
    for (int c = 0; c < 3; ++c) {
      const double scale = std::max({std::abs(b0.lo.comp(c, 1)), std::abs(b0.hi.comp(c, 1)),
                                     1e-300});
      CHECK(b1.lo.comp(c, 1) <= b0.lo.comp(c, 1) + 1e-12 * scale);
      CHECK(b1.hi.comp(c, 1) >= b0.hi.comp(c, 1) - 1e-12 * scale);
    }
  }
}

TEST_CASE("bounds converge under velocity-grid refinement") {
  const GasModel gas(1.4, 1);
  const std::vector<State> s{prim_to_cons({1.0, -0.5, 0.0, 1.0}, gas),
                             prim_to_cons({0.5, 0.7, 0.0, 0.3}, gas)};
  double prev_change = 1e300;
  KineticConfig cfg;
  cfg.k_extent = 8.0;
  cfg.r_fac = 0.0;
  cfg.n_per_axis = 256;
  BoundsSet prev = integrate_bounds(s, cfg, gas);
  for (const int n : {512, 1024, 2048}) {
    cfg.n_per_axis = n;
    const BoundsSet b = integrate_bounds(s, cfg, gas);
    double change = 0.0;
    for (int c = 0; c < 3; ++c) {
      change = std::max(change, std::abs(b.lo.comp(c, 1) - prev.lo.comp(c, 1)));
      change = std::max(change, std::abs(b.hi.comp(c, 1) - prev.hi.comp(c, 1)));
    }
    CHECK(change < prev_change + 1e-15);
    prev_change = change;
    prev = b;
  }
  CHECK(prev_change < 1e-5);  // envelope-kink limited
}

TEST_CASE("2D constant stencil at k=4, n=32^2 is accurate to the truncation level") {
  const GasModel gas(1.4, 2);
  KineticConfig cfg;
  cfg.k_extent = 4.0;
  cfg.n_per_axis = 32;
  cfg.r_fac = 0.0;
  const State w0 = prim_to_cons({1.0, 0.4, -0.3, 0.9}, gas);
  const std::vector<State> s(5, w0);
  const BoundsSet b = integrate_bounds(s, cfg, gas);
  CHECK(close(b.lo.rho, w0.rho, 2e-3));
  CHECK(close(b.hi.rho, w0.rho, 2e-3));
  CHECK(close(b.lo.E, w0.E, 2e-3));
  CHECK(close(b.hi.E, w0.E, 2e-3));
  CHECK(std::abs(b.lo.mx - w0.mx) <= 2e-3 * std::abs(w0.E));
  CHECK(std::abs(b.hi.my - w0.my) <= 2e-3 * std::abs(w0.E));
}

TEST_CASE("velocity grid weights sum to the box volume") {
  VelocityGrid g;
  g.d = 2;
  g.lo = {-1.5, 0.5};
  g.hi = {2.5, 3.0};
  g.n = {17, 9};
  double sum = 0.0;
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j) sum += g.weight_1d(0, i) * g.weight_1d(1, j);
  CHECK(close(sum, 4.0 * 2.5, 1e-12));
  CHECK(close(g.weight_1d(0, 0), 0.5 * g.weight_1d(0, 1), 1e-15));
  CHECK(close(g.u_max(), std::hypot(2.5, 3.0), 1e-15));
}

TEST_CASE("inadmissible stencil members are rejected") {
  const GasModel gas(1.4, 1);
  KineticConfig cfg;
  std::vector<State> s{State{1.0, 0.0, 0.0, 2.5}, State{-1.0, 0.0, 0.0, 2.5}};
  CHECK_THROWS_AS((void)integrate_bounds(s, cfg, gas), admissibility_error);
  std::vector<State> s2{State{1.0, 3.0, 0.0, 1.0}};  // negative internal energy
  CHECK_THROWS_AS((void)integrate_bounds(s2, cfg, gas), admissibility_error);
}
