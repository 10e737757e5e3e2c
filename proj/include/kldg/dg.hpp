#pragma once

#include <span>
#include <vector>

#include "kldg/basis.hpp"
#include "kldg/euler.hpp"
#include "kldg/mesh.hpp"
#include "kldg/riemann.hpp"

namespace kldg {

/// Nodal coefficients for all elements; (p+1)^d tensor-product
/// Gauss-Legendre nodes per element, x index fastest in 2D is the row:
/// node = i*(p+1)+j with i the x node index and j the y node index.
struct Field {
  int d = 1;
  int p = 0;
  int nn = 1;  // nodes per element
  std::vector<State> v;

  Field() = default;
  Field(const Mesh& mesh, const Basis& basis)
      : d(mesh.d), p(basis.p), nn(1), v() {
    nn = basis.n();
    if (d == 2) nn *= basis.n();
    v.assign(static_cast<std::size_t>(mesh.n_total()) * nn, State{});
  }

  std::span<State> elem(int e) { return {v.data() + static_cast<std::size_t>(e) * nn, (std::size_t)nn}; }
  std::span<const State> elem(int e) const {
    return {v.data() + static_cast<std::size_t>(e) * nn, (std::size_t)nn};
  }
};

/// Interface trace values: per element, 2d faces with (p+1)^(d-1) nodes
/// each, ordered by the transverse node index. Face order matches mesh
/// sides (x-min, x-max[, y-min, y-max]).
struct FaceField {
  int nf = 1;       // nodes per face
  int nfaces = 2;   // faces per element
  std::vector<State> v;

  FaceField() = default;
  FaceField(const Mesh& mesh, const Basis& basis) {
    nf = mesh.d == 2 ? basis.n() : 1;
    nfaces = 2 * mesh.d;
    v.assign(static_cast<std::size_t>(mesh.n_total()) * nfaces * nf, State{});
  }

  State* face(int e, int f) { return v.data() + (static_cast<std::size_t>(e) * nfaces + f) * nf; }
  const State* face(int e, int f) const {
    return v.data() + (static_cast<std::size_t>(e) * nfaces + f) * nf;
  }
};

/// Tensor-product Gauss-Legendre average of the nodal values.
State element_mean(std::span<const State> nodes, const Basis& basis, int d);

/// Lagrange interpolation of every element to its face nodes.
void interpolate_to_faces(const Field& u, const Basis& basis, const Mesh& mesh, FaceField& out);

/// Physical node position within element e.
std::array<double, 2> node_position(const Mesh& mesh, const Basis& basis, int e, int node);

/// Ghost states across all physical boundary faces at time t.
struct GhostField {
  // indexed like the owning element's face: ghost.face(e, f)[k]
  FaceField g;
};

void compute_ghosts(const FaceField& faces, const Mesh& mesh, const Basis& basis,
                    const std::array<BoundaryCondition, 4>& bc, double t, const GasModel& gas,
                    GhostField& out);

/// DG residual (nodal time derivatives) in strong form with interface flux
/// corrections. `zero_flags[e]` is set when the element residual vanished
/// identically, which happens exactly on locally uniform data.
void residual(const Field& u, const FaceField& faces, const GhostField& ghosts, const Mesh& mesh,
              const Basis& basis, RiemannChoice flux, const GasModel& gas, Field& out,
              std::vector<char>& zero_flags);

/// Stencil for the kinetic bounds of element e: interior nodes, own face
/// values, then face-adjacent exterior face values (ghosts at boundaries).
void gather_stencil(int e, const Field& u, const FaceField& faces, const GhostField& ghosts,
                    const Mesh& mesh, std::vector<State>& out);

}  // namespace kldg
