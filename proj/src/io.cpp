#include "kldg/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace kldg {

double l1_error(std::span<const double> sol, std::span<const double> ref) {
  if (sol.size() != ref.size() || sol.empty())
    throw numerical_error("l1_error: size mismatch or empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < sol.size(); ++i) s += std::abs(sol[i] - ref[i]);
  return s / static_cast<double>(sol.size());
}

double linf_error(std::span<const double> sol, std::span<const double> ref) {
  if (sol.size() != ref.size() || sol.empty())
    throw numerical_error("linf_error: size mismatch or empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < sol.size(); ++i) s = std::max(s, std::abs(sol[i] - ref[i]));
  return s;
}

std::map<std::string, double> norms_vs_reference(
    const Field& u, const Mesh& mesh, const Basis& basis, const GasModel& gas,
    const std::function<Prim(const std::array<double, 2>&)>& ref) {
  const int ne = mesh.n_total();
  double s_rho = 0, s_m = 0, s_E = 0, s_U = 0, s_P = 0, s_e = 0, s_s = 0;
  double linf_rho = 0;
  long n = 0;
  for (int e = 0; e < ne; ++e) {
    auto w = u.elem(e);
    for (int i = 0; i < u.nn; ++i) {
      const auto pos = node_position(mesh, basis, e, i);
      const Prim qr = ref(pos);
      const State wr = prim_to_cons(qr, gas);
      const Prim q = cons_to_prim(w[i], gas);
      s_rho += std::abs(w[i].rho - wr.rho);
      linf_rho = std::max(linf_rho, std::abs(w[i].rho - wr.rho));
      double dm = std::abs(w[i].mx - wr.mx);
      double dU = std::abs(q.ux - qr.ux);
      if (mesh.d == 2) {
        dm = std::hypot(dm, w[i].my - wr.my);
        dU = std::hypot(dU, q.uy - qr.uy);
      }
      s_m += dm;
      s_U += dU;
      s_E += std::abs(w[i].E - wr.E);
      s_P += std::abs(q.P - qr.P);
      s_e += std::abs(q.P / ((gas.gamma - 1.0) * q.rho) - qr.P / ((gas.gamma - 1.0) * qr.rho));
      s_s += std::abs(q.P * std::pow(q.rho, -gas.gamma) - qr.P * std::pow(qr.rho, -gas.gamma));
      ++n;
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  return {{"rho_l1", s_rho * inv}, {"m_l1", s_m * inv},   {"E_l1", s_E * inv},
          {"U_l1", s_U * inv},     {"P_l1", s_P * inv},   {"e_l1", s_e * inv},
          {"s_l1", s_s * inv},     {"rho_linf", linf_rho}};
}

ConvergenceResult convergence_rates(const std::vector<double>& errors,
                                    const std::vector<double>& ns) {
  if (errors.size() != ns.size() || errors.size() < 2)
    throw numerical_error("convergence_rates: need matching lists of length >= 2");
  for (const double e : errors)
    if (!(e > 0.0)) throw numerical_error("convergence_rates: non-positive error");
  ConvergenceResult r;
  for (std::size_t i = 1; i < errors.size(); ++i)
    r.rates.push_back(std::log(errors[i - 1] / errors[i]) / std::log(ns[i] / ns[i - 1]));
  // Least-squares slope of log(e) against log(N).
  const std::size_t n = errors.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(ns[i]);
    my += std::log(errors[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(ns[i]) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  r.average = -sxy / sxx;
  return r;
}

void write_solution_csv(const std::string& path, const Field& u, const Mesh& mesh,
                        const Basis& basis, const GasModel& gas,
                        const std::vector<double>& elem_alpha) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw io_error("cannot open for writing: " + path);
  const int ne = mesh.n_total();
  if (mesh.d == 1) {
    std::fprintf(f, "x,rho,mx,E,ux,P,e,s,alpha\n");
  } else {
    std::fprintf(f, "x,y,rho,mx,my,E,ux,uy,P,e,s,alpha\n");
  }
  for (int e = 0; e < ne; ++e) {
    auto w = u.elem(e);
    const double alpha = elem_alpha.empty() ? 1.0 : elem_alpha[e];
    for (int i = 0; i < u.nn; ++i) {
      const auto pos = node_position(mesh, basis, e, i);
      const Prim q = cons_to_prim(w[i], gas);
      const double se = q.P / ((gas.gamma - 1.0) * q.rho);
      const double ent = q.P * std::pow(q.rho, -gas.gamma);
      if (mesh.d == 1) {
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", pos[0],
                     w[i].rho, w[i].mx, w[i].E, q.ux, q.P, se, ent, alpha);
      } else {
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                     pos[0], pos[1], w[i].rho, w[i].mx, w[i].my, w[i].E, q.ux, q.uy, q.P, se, ent,
                     alpha);
      }
    }
  }
  std::fclose(f);
}

namespace {

void put_u32(std::FILE* f, std::uint32_t v) { std::fwrite(&v, sizeof v, 1, f); }

}  // namespace

void write_solution_binary(const std::string& path, const Field& u, const Mesh& mesh,
                           const Basis& basis) {
  if (mesh.d != 2) throw io_error("binary grid output is 2D only");
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw io_error("cannot open for writing: " + path);
  const int m = basis.n();
  const std::uint32_t NX = mesh.nelem[0] * m, NY = mesh.nelem[1] * m;
  std::fwrite("KLDG", 1, 4, f);
  put_u32(f, 1);
  put_u32(f, 2);
  put_u32(f, basis.p);
  put_u32(f, mesh.nelem[0]);
  put_u32(f, mesh.nelem[1]);
  std::vector<double> coord;
  for (int axis = 0; axis < 2; ++axis) {
    coord.clear();
    for (int e = 0; e < mesh.nelem[axis]; ++e)
      for (int i = 0; i < m; ++i)
        coord.push_back(mesh.center(axis, e) + 0.5 * mesh.h(axis) * basis.nodes[i]);
    std::fwrite(coord.data(), sizeof(double), coord.size(), f);
  }
  std::vector<double> fieldbuf(static_cast<std::size_t>(NX) * NY);
  for (int c = 0; c < 4; ++c) {
    for (int ej = 0; ej < mesh.nelem[1]; ++ej)
      for (int j = 0; j < m; ++j)
        for (int ei = 0; ei < mesh.nelem[0]; ++ei)
          for (int i = 0; i < m; ++i) {
            const State& w = u.elem(mesh.flat(ei, ej))[i * m + j];
            const double v = c == 0 ? w.rho : c == 1 ? w.mx : c == 2 ? w.my : w.E;
            fieldbuf[static_cast<std::size_t>(ej * m + j) * NX + ei * m + i] = v;
          }
    std::fwrite(fieldbuf.data(), sizeof(double), fieldbuf.size(), f);
  }
  std::fclose(f);
}

BinaryGrid read_solution_binary(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw io_error("cannot open: " + path);
  char magic[4];
  if (std::fread(magic, 1, 4, f) != 4 || std::memcmp(magic, "KLDG", 4) != 0) {
    std::fclose(f);
    throw io_error("bad magic in " + path);
  }
  BinaryGrid g;
  auto rd_u32 = [&](std::uint32_t& v) {
    if (std::fread(&v, sizeof v, 1, f) != 1) throw io_error("truncated file: " + path);
  };
  rd_u32(g.version);
  rd_u32(g.d);
  rd_u32(g.p);
  rd_u32(g.nx);
  rd_u32(g.ny);
  const std::size_t NX = static_cast<std::size_t>(g.nx) * (g.p + 1);
  const std::size_t NY = static_cast<std::size_t>(g.ny) * (g.p + 1);
  auto rd_arr = [&](std::vector<double>& v, std::size_t n) {
    v.resize(n);
    if (std::fread(v.data(), sizeof(double), n, f) != n)
      throw io_error("truncated file: " + path);
  };
  rd_arr(g.x, NX);
  rd_arr(g.y, NY);
  rd_arr(g.rho, NX * NY);
  rd_arr(g.mx, NX * NY);
  rd_arr(g.my, NX * NY);
  rd_arr(g.E, NX * NY);
  std::fclose(f);
  return g;
}

State total_conserved(const Field& u, const Mesh& mesh, const Basis& basis) {
  State tot{};
  const double vol = mesh.volume();
  for (int e = 0; e < mesh.n_total(); ++e)
    tot = tot + vol * element_mean(u.elem(e), basis, mesh.d);
  return tot;
}

}  // namespace kldg
