#include "kldg/dg.hpp"

#include <cmath>
#include <string>

namespace kldg {

State element_mean(std::span<const State> nodes, const Basis& basis, int d) {
  const int m = basis.n();
  State acc{};
  double wsum = 0.0;
  if (d == 1) {
    for (int i = 0; i < m; ++i) {
      acc = acc + basis.weights[i] * nodes[i];
      wsum += basis.weights[i];
    }
  } else {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const double w = basis.weights[i] * basis.weights[j];
        acc = acc + w * nodes[i * m + j];
        wsum += w;
      }
    }
  }
  return (1.0 / wsum) * acc;
}

void interpolate_to_faces(const Field& u, const Basis& basis, const Mesh& mesh, FaceField& out) {
  const int m = basis.n();
  const int ne = mesh.n_total();
  if (mesh.d == 1) {
    for (int e = 0; e < ne; ++e) {
      auto w = u.elem(e);
      State lo{}, hi{};
      for (int i = 0; i < m; ++i) {
        lo = lo + basis.interp_lo[i] * w[i];
        hi = hi + basis.interp_hi[i] * w[i];
      }
      out.face(e, 0)[0] = lo;
      out.face(e, 1)[0] = hi;
    }
    return;
  }
  for (int e = 0; e < ne; ++e) {
    auto w = u.elem(e);
    for (int j = 0; j < m; ++j) {  // x faces, transverse index j
      State lo{}, hi{};
      for (int i = 0; i < m; ++i) {
        lo = lo + basis.interp_lo[i] * w[i * m + j];
        hi = hi + basis.interp_hi[i] * w[i * m + j];
      }
      out.face(e, 0)[j] = lo;
      out.face(e, 1)[j] = hi;
    }
    for (int i = 0; i < m; ++i) {  // y faces, transverse index i
      State lo{}, hi{};
      for (int j = 0; j < m; ++j) {
        lo = lo + basis.interp_lo[j] * w[i * m + j];
        hi = hi + basis.interp_hi[j] * w[i * m + j];
      }
      out.face(e, 2)[i] = lo;
      out.face(e, 3)[i] = hi;
    }
  }
}

std::array<double, 2> node_position(const Mesh& mesh, const Basis& basis, int e, int node) {
  const int m = basis.n();
  std::array<double, 2> pos{0.0, 0.0};
  if (mesh.d == 1) {
    pos[0] = mesh.center(0, e) + 0.5 * mesh.h(0) * basis.nodes[node];
    return pos;
  }
  const int i = node / m, j = node % m;
  pos[0] = mesh.center(0, mesh.ei(e)) + 0.5 * mesh.h(0) * basis.nodes[i];
  pos[1] = mesh.center(1, mesh.ej(e)) + 0.5 * mesh.h(1) * basis.nodes[j];
  return pos;
}

namespace {

std::array<double, 2> face_node_position(const Mesh& mesh, const Basis& basis, int e, int f,
                                         int k) {
  const int axis = f / 2;
  const int sideHi = f % 2;
  std::array<double, 2> pos{0.0, 0.0};
  pos[axis] = sideHi ? mesh.xmin[axis] + (axis == 0 ? mesh.ei(e) + 1 : mesh.ej(e) + 1) * mesh.h(axis)
                     : mesh.xmin[axis] + (axis == 0 ? mesh.ei(e) : mesh.ej(e)) * mesh.h(axis);
  if (mesh.d == 2) {
    const int tr = 1 - axis;
    const int idx = tr == 0 ? mesh.ei(e) : mesh.ej(e);
    pos[tr] = mesh.center(tr, idx) + 0.5 * mesh.h(tr) * basis.nodes[k];
  }
  return pos;
}

std::array<double, 2> face_center_position(const Mesh& mesh, int e, int f) {
  const int axis = f / 2;
  const int sideHi = f % 2;
  std::array<double, 2> fc{0.0, 0.0};
  fc[axis] = mesh.xmin[axis] + ((axis == 0 ? mesh.ei(e) : mesh.ej(e)) + sideHi) * mesh.h(axis);
  if (mesh.d == 2) {
    const int tr = 1 - axis;
    fc[tr] = mesh.center(tr, tr == 0 ? mesh.ei(e) : mesh.ej(e));
  }
  return fc;
}

}  // namespace

void compute_ghosts(const FaceField& faces, const Mesh& mesh, const Basis& basis,
                    const std::array<BoundaryCondition, 4>& bc, double t, const GasModel& gas,
                    GhostField& out) {
  const int ne = mesh.n_total();
  if (out.g.v.size() != faces.v.size()) {
    out.g.nf = faces.nf;
    out.g.nfaces = faces.nfaces;
    out.g.v.assign(faces.v.size(), State{});
  }
  for (int e = 0; e < ne; ++e) {
    for (int f = 0; f < 2 * mesh.d; ++f) {
      if (mesh.neighbor(e, f) >= 0) continue;
      const int axis = f / 2;
      const int sign = (f % 2 == 0) ? -1 : 1;
      const auto fc = face_center_position(mesh, e, f);
      for (int k = 0; k < faces.nf; ++k) {
        const auto pos = face_node_position(mesh, basis, e, f, k);
        out.g.face(e, f)[k] =
            boundary_state(bc[f], faces.face(e, f)[k], pos, fc, axis, sign, t, gas);
      }
    }
  }
}

namespace {

inline bool all_zero(std::span<const State> r) {
  for (const State& s : r)
    if (s.rho != 0.0 || s.mx != 0.0 || s.my != 0.0 || s.E != 0.0) return false;
  return true;
}

}  // namespace

void residual(const Field& u, const FaceField& faces, const GhostField& ghosts, const Mesh& mesh,
              const Basis& basis, RiemannChoice flux_choice, const GasModel& gas, Field& out,
              std::vector<char>& zero_flags) {
  const int m = basis.n();
  const int ne = mesh.n_total();
  const int nf = faces.nf;
  zero_flags.assign(ne, 0);

  const auto face_pair_flux = [&](int el, int er, int f_of_left_hi, int axis, int k,
                                  bool lo_boundary, bool hi_boundary) -> State {
    const State& wl = lo_boundary ? ghosts.g.face(er, 2 * axis)[k]
                                  : faces.face(el, f_of_left_hi)[k];
    const State& wr = hi_boundary ? ghosts.g.face(el, 2 * axis + 1)[k]
                                  : faces.face(er, 2 * axis)[k];
    try {
      return numerical_flux(flux_choice, wl, wr, axis, gas);
    } catch (const admissibility_error& err) {
      throw admissibility_error(std::string(err.what()) + " [axis " + std::to_string(axis) +
                                ", elements " + std::to_string(el) + "/" + std::to_string(er) +
                                "]");
    }
  };

  if (mesh.d == 1) {
    const int nx = mesh.nelem[0];
    std::vector<State> xflux(nx + 1);
    // interface fluxes; for periodic meshes faces 0 and nx are the same face
    for (int i = 1; i < nx; ++i) xflux[i] = face_pair_flux(i - 1, i, 1, 0, 0, false, false);
    if (mesh.periodic[0]) {
      xflux[0] = face_pair_flux(nx - 1, 0, 1, 0, 0, false, false);
      xflux[nx] = xflux[0];
    } else {
      xflux[0] = face_pair_flux(0, 0, 1, 0, 0, true, false);
      xflux[nx] = face_pair_flux(nx - 1, nx - 1, 1, 0, 0, false, true);
    }

    const double sx = 2.0 / mesh.h(0);
    std::vector<State> F(m);
    for (int e = 0; e < nx; ++e) {
      auto w = u.elem(e);
      auto r = out.elem(e);
      for (int i = 0; i < m; ++i) F[i] = flux_axis(w[i], 0, gas);
      State iflo{}, ifhi{};
      for (int i = 0; i < m; ++i) {
        iflo = iflo + basis.interp_lo[i] * F[i];
        ifhi = ifhi + basis.interp_hi[i] * F[i];
      }
      const State dlo = xflux[e] - iflo;      // inward correction at x-min
      const State dhi = xflux[e + 1] - ifhi;  // at x-max
      for (int i = 0; i < m; ++i) {
        State df{};
        for (int j = 0; j < m; ++j) df = df + basis.d(i, j) * F[j];
        const double ci = basis.interp_hi[i] / basis.weights[i];
        const double cl = basis.interp_lo[i] / basis.weights[i];
        r[i] = (-sx) * (df + ci * dhi - cl * dlo);
      }
      zero_flags[e] = all_zero(r) ? 1 : 0;
    }
    return;
  }

  const int nx = mesh.nelem[0], ny = mesh.nelem[1];
  std::vector<State> xflux(static_cast<std::size_t>(nx + 1) * ny * nf);
  std::vector<State> yflux(static_cast<std::size_t>(ny + 1) * nx * nf);
  const auto xf = [&](int i, int j, int k) -> State& {
    return xflux[(static_cast<std::size_t>(j) * (nx + 1) + i) * nf + k];
  };
  const auto yf = [&](int i, int j, int k) -> State& {
    return yflux[(static_cast<std::size_t>(j) * nx + i) * nf + k];
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 1; i < nx; ++i)
      for (int k = 0; k < nf; ++k)
        xf(i, j, k) = face_pair_flux(mesh.flat(i - 1, j), mesh.flat(i, j), 1, 0, k, false, false);
    if (mesh.periodic[0]) {
      for (int k = 0; k < nf; ++k) {
        xf(0, j, k) = face_pair_flux(mesh.flat(nx - 1, j), mesh.flat(0, j), 1, 0, k, false, false);
        xf(nx, j, k) = xf(0, j, k);
      }
    } else {
      for (int k = 0; k < nf; ++k) {
        xf(0, j, k) = face_pair_flux(mesh.flat(0, j), mesh.flat(0, j), 1, 0, k, true, false);
        xf(nx, j, k) =
            face_pair_flux(mesh.flat(nx - 1, j), mesh.flat(nx - 1, j), 1, 0, k, false, true);
      }
    }
  }
  for (int i = 0; i < nx; ++i) {
    for (int j = 1; j < ny; ++j)
      for (int k = 0; k < nf; ++k)
        yf(i, j, k) = face_pair_flux(mesh.flat(i, j - 1), mesh.flat(i, j), 3, 1, k, false, false);
    if (mesh.periodic[1]) {
      for (int k = 0; k < nf; ++k) {
        yf(i, 0, k) = face_pair_flux(mesh.flat(i, ny - 1), mesh.flat(i, 0), 3, 1, k, false, false);
        yf(i, ny, k) = yf(i, 0, k);
      }
    } else {
      for (int k = 0; k < nf; ++k) {
        yf(i, 0, k) = face_pair_flux(mesh.flat(i, 0), mesh.flat(i, 0), 3, 1, k, true, false);
        yf(i, ny, k) =
            face_pair_flux(mesh.flat(i, ny - 1), mesh.flat(i, ny - 1), 3, 1, k, false, true);
      }
    }
  }

  const double sx = 2.0 / mesh.h(0);
  const double sy = 2.0 / mesh.h(1);
  std::vector<State> Fx(m * m), Fy(m * m);
  std::vector<State> ifxlo(m), ifxhi(m), ifylo(m), ifyhi(m);
  for (int e = 0; e < ne; ++e) {
    const int i0 = mesh.ei(e), j0 = mesh.ej(e);
    auto w = u.elem(e);
    auto r = out.elem(e);
    for (int n = 0; n < m * m; ++n) {
      Fx[n] = flux_axis(w[n], 0, gas);
      Fy[n] = flux_axis(w[n], 1, gas);
    }
    for (int j = 0; j < m; ++j) {
      State lo{}, hi{};
      for (int i = 0; i < m; ++i) {
        lo = lo + basis.interp_lo[i] * Fx[i * m + j];
        hi = hi + basis.interp_hi[i] * Fx[i * m + j];
      }
      ifxlo[j] = xf(i0, j0, j) - lo;
      ifxhi[j] = xf(i0 + 1, j0, j) - hi;
    }
    for (int i = 0; i < m; ++i) {
      State lo{}, hi{};
      for (int j = 0; j < m; ++j) {
        lo = lo + basis.interp_lo[j] * Fy[i * m + j];
        hi = hi + basis.interp_hi[j] * Fy[i * m + j];
      }
      ifylo[i] = yf(i0, j0, i) - lo;
      ifyhi[i] = yf(i0, j0 + 1, i) - hi;
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        State dfx{}, dfy{};
        for (int c = 0; c < m; ++c) {
          dfx = dfx + basis.d(i, c) * Fx[c * m + j];
          dfy = dfy + basis.d(j, c) * Fy[i * m + c];
        }
        const State rx = dfx + (basis.interp_hi[i] / basis.weights[i]) * ifxhi[j] -
                         (basis.interp_lo[i] / basis.weights[i]) * ifxlo[j];
        const State ry = dfy + (basis.interp_hi[j] / basis.weights[j]) * ifyhi[i] -
                         (basis.interp_lo[j] / basis.weights[j]) * ifylo[i];
        r[i * m + j] = (-sx) * rx + (-sy) * ry;
      }
    }
    zero_flags[e] = all_zero(r) ? 1 : 0;
  }
}

void gather_stencil(int e, const Field& u, const FaceField& faces, const GhostField& ghosts,
                    const Mesh& mesh, std::vector<State>& out) {
  out.clear();
  auto w = u.elem(e);
  out.insert(out.end(), w.begin(), w.end());
  const int nfaces = 2 * mesh.d;
  for (int f = 0; f < nfaces; ++f) {
    const State* fs = faces.face(e, f);
    out.insert(out.end(), fs, fs + faces.nf);
  }
  for (int f = 0; f < nfaces; ++f) {
    const int nb = mesh.neighbor(e, f);
    if (nb < 0) {
      const State* gh = ghosts.g.face(e, f);
      out.insert(out.end(), gh, gh + faces.nf);
    } else {
      const int opposite = (f % 2 == 0) ? f + 1 : f - 1;
      const State* fs = faces.face(nb, opposite);
      out.insert(out.end(), fs, fs + faces.nf);
    }
  }
}

}  // namespace kldg
