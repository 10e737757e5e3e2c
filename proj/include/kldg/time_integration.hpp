#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kldg/dg.hpp"
#include "kldg/kinetic_bounds.hpp"
#include "kldg/limiter.hpp"

namespace kldg {

struct StepControl {
  double cfl = 0.5;
  double t_end = 0.0;
  std::optional<double> dt_fixed;
  bool check_admissibility = false;
};

/// CFL time step: cfl * min over elements and axes of
/// h_axis / ((2p+1) * wavespeed at the element mean).
double compute_dt(const Field& u, const Mesh& mesh, const Basis& basis, double cfl,
                  const GasModel& gas);

struct StepStats {
  int limited = 0;        ///< elements with alpha_min < 1 in any substage
  int changed = 0;        ///< elements actually modified by the limiter
  int pressure_passes = 0;
  double min_alpha = 1.0;
};

/// SSP-RK3 driver: before every substage the per-element kinetic bounds are
/// rebuilt from the pre-stage solution, the stage is advanced, and each
/// element is limited against its bounds (density floor on the bounds,
/// squeeze, pressure-floor second pass).
class Stepper {
 public:
  Stepper(const Mesh& mesh, const Basis& basis, const GasModel& gas, RiemannChoice flux,
          std::array<BoundaryCondition, 4> bc, KineticConfig kin, LimiterConfig lim,
          StepControl ctrl);

  /// Bounds + limit pass on the initial data (no advance). Face
  /// interpolation of discontinuous data can overshoot the admissible set;
  /// this pass enforces the same bounds the first substage would.
  void initial_limit(Field& u, FaceField& uf, double t);

  /// One full SSP-RK3 step from t to t+dt.
  StepStats step(Field& u, FaceField& uf, double t, double dt);

  const std::vector<double>& last_alpha() const { return alpha_last_; }
  const std::vector<char>& last_changed() const { return changed_last_; }

 private:
  struct StageOut {
    double alpha_min;
    bool changed;
    bool pressure_pass;
  };

  StageOut limit_one(int e, std::span<State> interior, State* face_vals, int nfvals,
                     const BoundsSet& bounds, double t, int stage);
  void substage(const Field& un, const FaceField& unf, const Field& v, const FaceField& vf,
                double a_old, double a_stage, double dt, double t_stage, int stage, Field& out,
                FaceField& outf, StepStats& stats);

  const Mesh& mesh_;
  const Basis& basis_;
  GasModel gas_;
  RiemannChoice flux_;
  std::array<BoundaryCondition, 4> bc_;
  KineticConfig kin_;
  LimiterConfig lim_;
  StepControl ctrl_;

  Field rate_, stage_a_, stage_b_;
  FaceField faces_a_, faces_b_;
  GhostField ghosts_;
  std::vector<char> zero_flags_, same_as_un_;
  std::vector<State> stencil_, vspan_;
  BoundsWorkspace bw_;
  std::vector<double> alpha_last_, step_alpha_;
  std::vector<char> changed_last_, step_changed_, step_ppass_;
};

}  // namespace kldg
