#include "kldg/mesh.hpp"

namespace kldg {

State boundary_state(const BoundaryCondition& bc, const State& interior,
                     const std::array<double, 2>& pos, const std::array<double, 2>& fc, int axis,
                     int sign, double t, const GasModel& gas) {
  switch (bc.kind) {
    case BoundaryCondition::Kind::dirichlet:
      return prim_to_cons(bc.state_fn(pos, fc, t), gas);
    case BoundaryCondition::Kind::slip_wall: {
      State g = interior;
      g.mom(axis) = -g.mom(axis);
      return g;
    }
    case BoundaryCondition::Kind::mixed_dirichlet_slip: {
      if (pos[0] < bc.x_split) return prim_to_cons(bc.state_fn(pos, fc, t), gas);
      State g = interior;
      g.mom(axis) = -g.mom(axis);
      return g;
    }
    case BoundaryCondition::Kind::periodic:
      break;
  }
  (void)sign;
  throw config_error("boundary_state: periodic side has no ghost state");
}

}  // namespace kldg
