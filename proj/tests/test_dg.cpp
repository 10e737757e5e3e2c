#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "kldg/dg.hpp"
#include "test_support.hpp"

using namespace kldg;
using kldg::test::close;

namespace {

Mesh line_mesh(int n, double x0 = 0.0, double x1 = 1.0, bool periodic = true) {
  Mesh m;
  m.d = 1;
  m.nelem = {n, 1};
  m.xmin = {x0, 0.0};
  m.xmax = {x1, 0.0};
  m.periodic = {periodic, false};
  return m;
}

Mesh quad_mesh(int nx, int ny, bool periodic = true) {
  Mesh m;
  m.d = 2;
  m.nelem = {nx, ny};
  m.xmin = {0.0, 0.0};
  m.xmax = {1.0, 1.0};
  m.periodic = {periodic, periodic};
  return m;
}

void fill(Field& u, const Mesh& mesh, const Basis& basis, const GasModel& gas,
          const std::function<Prim(const std::array<double, 2>&)>& f) {
  for (int e = 0; e < mesh.n_total(); ++e) {
    auto w = u.elem(e);
    for (int i = 0; i < u.nn; ++i) w[i] = prim_to_cons(f(node_position(mesh, basis, e, i)), gas);
  }
}

// High-order central difference of the exact flux divergence.
State fd_flux_divergence(const std::function<Prim(const std::array<double, 2>&)>& f,
                         const std::array<double, 2>& x, const GasModel& gas) {
  const double h = 1e-4;
  State out{};
  for (int a = 0; a < gas.d; ++a) {
    auto F = [&](double s) {
      auto xx = x;
      xx[a] += s;
      return flux_axis(prim_to_cons(f(xx), gas), a, gas);
    };
    const State d =
        (1.0 / (12.0 * h)) * (8.0 * (F(h) - F(-h)) - (F(2.0 * h) - F(-2.0 * h)));
    out = out + d;
  }
  return out;
}

}  // namespace

TEST_CASE("element mean: constants, two-point average, odd data") {
  const GasModel gas(1.4, 1);
  const Basis b1(1);
  std::vector<State> vals{State{1.0, 2.0, 0.0, 4.0}, State{3.0, -2.0, 0.0, 6.0}};
  const State m = element_mean(vals, b1, 1);
  CHECK(close(m.rho, 2.0, 1e-15));
  CHECK(close(m.mx, 0.0, 0.0, 1e-15));
  CHECK(close(m.E, 5.0, 1e-15));

  const Basis b3(3);
  std::vector<State> odd(4);
  for (int i = 0; i < 4; ++i) {
    const double x = b3.nodes[i];
    odd[i] = State{x * x * x + 2.0 * x, 0.0, 0.0, 1.0};  // odd about center + const
  }
  const State mo = element_mean(odd, b3, 1);
  CHECK(close(mo.rho, 0.0, 0.0, 1e-14));
  CHECK(close(mo.E, 1.0, 1e-15));
  (void)gas;
}

TEST_CASE("face interpolation: constants exactly, linears to roundoff") {
  const GasModel gas(1.4, 1);
  const Basis basis(3);
  const Mesh mesh = line_mesh(4);
  Field u(mesh, basis);
  const State w0 = prim_to_cons({1.3, 0.2, 0.0, 0.9}, gas);
  for (auto& w : u.v) w = w0;
  FaceField f(mesh, basis);
  interpolate_to_faces(u, basis, mesh, f);
  for (int e = 0; e < 4; ++e) {
    CHECK(f.face(e, 0)[0] == w0);  // bitwise: uniform fast path
    CHECK(f.face(e, 1)[0] == w0);
  }
  // linear data reach the face values exactly (within roundoff)
  Field ul(mesh, basis);
  for (int e = 0; e < 4; ++e) {
    auto w = ul.elem(e);
    for (int i = 0; i < ul.nn; ++i) w[i] = State{2.0 + basis.nodes[i], 0.0, 0.0, 1.0};
  }
  interpolate_to_faces(ul, basis, mesh, f);
  CHECK(close(f.face(2, 0)[0].rho, 1.0, 1e-13));
  CHECK(close(f.face(2, 1)[0].rho, 3.0, 1e-13));
}

TEST_CASE("2D face interpolation commutes with scaling") {
  const GasModel gas(1.4, 2);
  const Basis basis(2);
  const Mesh mesh = quad_mesh(2, 2);
  Field u(mesh, basis);
  kldg::test::Rng rng(3);
  for (auto& w : u.v) w = rng.state(gas);
  FaceField f1(mesh, basis), f2(mesh, basis);
  interpolate_to_faces(u, basis, mesh, f1);
  for (auto& w : u.v) w = 3.0 * w;
  interpolate_to_faces(u, basis, mesh, f2);
  for (std::size_t i = 0; i < f1.v.size(); ++i) {
    CHECK(close(3.0 * f1.v[i].rho, f2.v[i].rho, 1e-14));
    CHECK(close(3.0 * f1.v[i].E, f2.v[i].E, 1e-14));
  }
}

TEST_CASE("free stream is preserved bitwise (1D and 2D, all fluxes)") {
  for (const int d : {1, 2}) {
    const GasModel gas(1.4, d);
    const Basis basis(3);
    const Mesh mesh = d == 1 ? line_mesh(6) : quad_mesh(3, 3);
    Field u(mesh, basis), r(mesh, basis);
    const State w0 = prim_to_cons({1.1, 0.4, -0.3, 0.8}, gas);
    for (auto& w : u.v) w = w0;
    FaceField f(mesh, basis);
    interpolate_to_faces(u, basis, mesh, f);
    GhostField g;
    std::array<BoundaryCondition, 4> bc{};
    compute_ghosts(f, mesh, basis, bc, 0.0, gas, g);
    std::vector<char> zf;
    for (const auto choice :
         {RiemannChoice::rusanov, RiemannChoice::hll, RiemannChoice::hllc}) {
      residual(u, f, g, mesh, basis, choice, gas, r, zf);
      for (const State& s : r.v) {
        CHECK(s.rho == 0.0);
        CHECK(s.mx == 0.0);
        CHECK(s.my == 0.0);
        CHECK(s.E == 0.0);
      }
      for (const char z : zf) CHECK(z == 1);
    }
  }
}

TEST_CASE("mean rate identity and global conservation on a periodic mesh") {
  const GasModel gas(1.4, 1);
  const Basis basis(2);
  const Mesh mesh = line_mesh(8);
  Field u(mesh, basis), r(mesh, basis);
  fill(u, mesh, basis, gas, [](const std::array<double, 2>& x) {
    return Prim{1.0 + 0.3 * std::sin(2.0 * M_PI * x[0]), 0.5, 0.0,
                1.0 + 0.2 * std::cos(2.0 * M_PI * x[0])};
  });
  FaceField f(mesh, basis);
  interpolate_to_faces(u, basis, mesh, f);
  GhostField g;
  std::array<BoundaryCondition, 4> bc{};
  compute_ghosts(f, mesh, basis, bc, 0.0, gas, g);
  std::vector<char> zf;
  residual(u, f, g, mesh, basis, RiemannChoice::hllc, gas, r, zf);

  // conservation: sum of volume-weighted mean rates telescopes to zero
  State tot{};
  for (int e = 0; e < 8; ++e) tot = tot + mesh.h(0) * element_mean(r.elem(e), basis, 1);
  CHECK(close(tot.rho, 0.0, 0.0, 1e-12));
  CHECK(close(tot.mx, 0.0, 0.0, 1e-12));
  CHECK(close(tot.E, 0.0, 0.0, 1e-12));

  // mean rate equals the interface flux difference
  for (int e = 0; e < 8; ++e) {
    const int left = mesh.neighbor(e, 0);
    const State fl =
        numerical_flux(RiemannChoice::hllc, f.face(left, 1)[0], f.face(e, 0)[0], 0, gas);
    const int right = e;
    const State fr = numerical_flux(RiemannChoice::hllc, f.face(right, 1)[0],
                                    f.face(mesh.neighbor(e, 1), 0)[0], 0, gas);
    const State mr = element_mean(r.elem(e), basis, 1);
    CHECK(close(mesh.h(0) * mr.rho, -(fr.rho - fl.rho), 1e-12, 1e-12));
    CHECK(close(mesh.h(0) * mr.mx, -(fr.mx - fl.mx), 1e-12, 1e-12));
    CHECK(close(mesh.h(0) * mr.E, -(fr.E - fl.E), 1e-12, 1e-12));
  }
}

TEST_CASE("residual converges to the exact flux divergence at order >= p+1/2") {
  const GasModel gas(1.4, 1);
  const auto smooth = [](const std::array<double, 2>& x) {
    return Prim{2.0 + 0.5 * std::sin(2.0 * M_PI * x[0]), 0.3, 0.0,
                1.0 + 0.2 * std::cos(2.0 * M_PI * x[0])};
  };
  for (const int p : {1, 2, 3}) {
    const Basis basis(p);
    std::vector<double> errs, ns;
    for (const int n : {8, 16, 32}) {
      const Mesh mesh = line_mesh(n);
      Field u(mesh, basis), r(mesh, basis);
      fill(u, mesh, basis, gas, smooth);
      FaceField f(mesh, basis);
      interpolate_to_faces(u, basis, mesh, f);
      GhostField g;
      std::array<BoundaryCondition, 4> bc{};
      compute_ghosts(f, mesh, basis, bc, 0.0, gas, g);
      std::vector<char> zf;
      residual(u, f, g, mesh, basis, RiemannChoice::hllc, gas, r, zf);
      double l2 = 0.0;
      long cnt = 0;
      for (int e = 0; e < n; ++e) {
        auto rr = r.elem(e);
        for (int i = 0; i <= p; ++i) {
          const State ex = fd_flux_divergence(smooth, node_position(mesh, basis, e, i), gas);
          const State diff = rr[i] + ex;  // residual approximates -div F
          l2 += diff.rho * diff.rho + diff.mx * diff.mx + diff.E * diff.E;
          cnt += 3;
        }
      }
      errs.push_back(std::sqrt(l2 / cnt));
      ns.push_back(n);
    }
    const double rate = std::log(errs[0] / errs[2]) / std::log(ns[2] / ns[0]);
    INFO("p = " << p << " rate = " << rate);
    CHECK(rate >= p + 0.5);
  }
}

TEST_CASE("2D residual converges on a smooth field") {
  const GasModel gas(1.4, 2);
  const auto smooth = [](const std::array<double, 2>& x) {
    return Prim{2.0 + 0.4 * std::sin(2.0 * M_PI * x[0]) * std::cos(2.0 * M_PI * x[1]),
                0.3, -0.2, 1.5 + 0.3 * std::cos(2.0 * M_PI * x[0])};
  };
  const int p = 2;
  const Basis basis(p);
  std::vector<double> errs, ns;
  for (const int n : {4, 8, 16}) {
    const Mesh mesh = quad_mesh(n, n);
    Field u(mesh, basis), r(mesh, basis);
    fill(u, mesh, basis, gas, smooth);
    FaceField f(mesh, basis);
    interpolate_to_faces(u, basis, mesh, f);
    GhostField g;
    std::array<BoundaryCondition, 4> bc{};
    compute_ghosts(f, mesh, basis, bc, 0.0, gas, g);
    std::vector<char> zf;
    residual(u, f, g, mesh, basis, RiemannChoice::hllc, gas, r, zf);
    double l2 = 0.0;
    long cnt = 0;
    for (int e = 0; e < mesh.n_total(); ++e) {
      auto rr = r.elem(e);
      for (int i = 0; i < u.nn; ++i) {
        const State ex = fd_flux_divergence(smooth, node_position(mesh, basis, e, i), gas);
        const State diff = rr[i] + ex;
        l2 += diff.rho * diff.rho + diff.mx * diff.mx + diff.my * diff.my + diff.E * diff.E;
        cnt += 4;
      }
    }
    errs.push_back(std::sqrt(l2 / cnt));
    ns.push_back(n);
  }
  const double rate = std::log(errs[0] / errs[2]) / std::log(ns[2] / ns[0]);
  INFO("rate = " << rate);
  CHECK(rate >= p + 0.5);
}

TEST_CASE("stencil sizes and contents") {
  const GasModel gas(1.4, 1);
  const Basis basis(2);
  const Mesh mesh = line_mesh(4);
  Field u(mesh, basis);
  kldg::test::Rng rng(8);
  for (auto& w : u.v) w = rng.state(gas);
  FaceField f(mesh, basis);
  interpolate_to_faces(u, basis, mesh, f);
  GhostField g;
  std::array<BoundaryCondition, 4> bc{};
  compute_ghosts(f, mesh, basis, bc, 0.0, gas, g);
  std::vector<State> s;
  gather_stencil(1, u, f, g, mesh, s);
  CHECK(s.size() == 7);  // 3 interior + 2 own faces + 2 exterior faces

  // 2D: (p+1)^2 + 4(p+1) + 4(p+1)
  const GasModel gas2(1.4, 2);
  const Mesh mesh2 = quad_mesh(3, 3);
  Field u2(mesh2, basis);
  for (auto& w : u2.v) w = rng.state(gas2);
  FaceField f2(mesh2, basis);
  interpolate_to_faces(u2, basis, mesh2, f2);
  GhostField g2;
  compute_ghosts(f2, mesh2, basis, bc, 0.0, gas2, g2);
  gather_stencil(4, u2, f2, g2, mesh2, s);
  CHECK(s.size() == 9 + 12 + 12);
}

TEST_CASE("periodic single-element mesh wraps onto its own opposite face") {
  const GasModel gas(1.4, 1);
  const Basis basis(1);
  const Mesh mesh = line_mesh(1);
  CHECK(mesh.neighbor(0, 0) == 0);
  CHECK(mesh.neighbor(0, 1) == 0);
  Field u(mesh, basis);
  u.elem(0)[0] = prim_to_cons({1.0, 0.2, 0.0, 1.0}, gas);
  u.elem(0)[1] = prim_to_cons({1.5, 0.1, 0.0, 1.2}, gas);
  FaceField f(mesh, basis);
  interpolate_to_faces(u, basis, mesh, f);
  GhostField g;
  std::array<BoundaryCondition, 4> bc{};
  compute_ghosts(f, mesh, basis, bc, 0.0, gas, g);
  std::vector<State> s;
  gather_stencil(0, u, f, g, mesh, s);
  CHECK(s.size() == 6);
  CHECK(s[4] == f.face(0, 1)[0]);  // exterior of the left face = own right face
  CHECK(s[5] == f.face(0, 0)[0]);
}

TEST_CASE("uniform field gives a uniform stencil") {
  const GasModel gas(1.4, 2);
  const Basis basis(2);
  const Mesh mesh = quad_mesh(3, 3);
  Field u(mesh, basis);
  const State w0 = prim_to_cons({1.0, 0.1, 0.2, 1.0}, gas);
  for (auto& w : u.v) w = w0;
  FaceField f(mesh, basis);
  interpolate_to_faces(u, basis, mesh, f);
  GhostField g;
  std::array<BoundaryCondition, 4> bc{};
  compute_ghosts(f, mesh, basis, bc, 0.0, gas, g);
  std::vector<State> s;
  gather_stencil(4, u, f, g, mesh, s);
  for (const State& w : s) CHECK(w == w0);
}
