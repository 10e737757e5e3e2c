#include "kldg/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kldg {

double compute_dt(const Field& u, const Mesh& mesh, const Basis& basis, double cfl,
                  const GasModel& gas) {
  const int ne = mesh.n_total();
  const double order = 2.0 * basis.p + 1.0;
  double dt = std::numeric_limits<double>::max();
  for (int e = 0; e < ne; ++e) {
    const State mean = element_mean(u.elem(e), basis, mesh.d);
    const double P = pressure(mean, gas);
    if (!(mean.rho > 0.0) || !(P > 0.0))
      throw admissibility_error("compute_dt: inadmissible element mean in element " +
                                std::to_string(e));
    const double c = std::sqrt(gas.gamma * P / mean.rho);
    for (int a = 0; a < mesh.d; ++a) {
      const double lam = std::abs(mean.mom(a) / mean.rho) + c;
      dt = std::min(dt, mesh.h(a) / (order * lam));
    }
  }
  return cfl * dt;
}

Stepper::Stepper(const Mesh& mesh, const Basis& basis, const GasModel& gas, RiemannChoice flux,
                 std::array<BoundaryCondition, 4> bc, KineticConfig kin, LimiterConfig lim,
                 StepControl ctrl)
    : mesh_(mesh),
      basis_(basis),
      gas_(gas),
      flux_(flux),
      bc_(bc),
      kin_(kin),
      lim_(lim),
      ctrl_(ctrl),
      rate_(mesh, basis),
      stage_a_(mesh, basis),
      stage_b_(mesh, basis),
      faces_a_(mesh, basis),
      faces_b_(mesh, basis) {
  kin_.validate();
  const int ne = mesh.n_total();
  zero_flags_.assign(ne, 0);
  same_as_un_.assign(ne, 0);
  alpha_last_.assign(ne, 1.0);
  changed_last_.assign(ne, 0);
}

Stepper::StageOut Stepper::limit_one(int e, std::span<State> interior, State* face_vals,
                                     int nfvals, const BoundsSet& bounds, double t, int stage) {
  const int nn = static_cast<int>(interior.size());
  vspan_.resize(nn + nfvals);
  std::copy(interior.begin(), interior.end(), vspan_.begin());
  std::copy(face_vals, face_vals + nfvals, vspan_.begin() + nn);
  const State mean = element_mean(interior, basis_, mesh_.d);

  StageOut out{1.0, false, false};
  try {
    const LimiterReport rep =
        limit_element({vspan_.data(), vspan_.size()}, mean, bounds, gas_, lim_);
    out.alpha_min = rep.alpha_min;
    out.changed = rep.changed;
    const auto ap = pressure_floor_pass({vspan_.data(), vspan_.size()}, mean, gas_,
                                        lim_.pressure_floor);
    if (ap) {
      out.pressure_pass = true;
      out.changed = true;
    }
  } catch (const solver_error& err) {
    throw bounds_violation_error(std::string(err.what()) + " [element " + std::to_string(e) +
                                 ", stage " + std::to_string(stage) + ", t = " +
                                 std::to_string(t) + "]");
  }
  if (out.changed) {
    std::copy(vspan_.begin(), vspan_.begin() + nn, interior.begin());
    std::copy(vspan_.begin() + nn, vspan_.end(), face_vals);
  }
  return out;
}

void Stepper::substage(const Field& un, const FaceField& unf, const Field& v, const FaceField& vf,
                       double a_old, double a_stage, double dt, double t_stage, int stage,
                       Field& out, FaceField& outf, StepStats& stats) {
  const int ne = mesh_.n_total();
  compute_ghosts(vf, mesh_, basis_, bc_, t_stage, gas_, ghosts_);
  residual(v, vf, ghosts_, mesh_, basis_, flux_, gas_, rate_, zero_flags_);

  // Advance. Elements with an identically zero rate whose state still equals
  // u^n pass through unchanged, bit for bit.
  const double bdt = a_stage * dt;
  std::vector<char> frozen(ne, 0);
  for (int e = 0; e < ne; ++e) {
    auto wo = out.elem(e);
    if (zero_flags_[e] && (stage == 0 || same_as_un_[e])) {
      frozen[e] = 1;
      auto wu = un.elem(e);
      std::copy(wu.begin(), wu.end(), wo.begin());
      continue;
    }
    auto wu = un.elem(e);
    auto wv = v.elem(e);
    auto wr = rate_.elem(e);
    for (int i = 0; i < out.nn; ++i)
      wo[i] = a_old * wu[i] + a_stage * wv[i] + bdt * wr[i];
  }
  interpolate_to_faces(out, basis_, mesh_, outf);
  for (int e = 0; e < ne; ++e) {
    if (frozen[e]) {
      // face values reproduce u^n's bitwise (uniform fast path); restore the
      // stored ones for safety against a frozen non-uniform element
      const int nv = outf.nfaces * outf.nf;
      std::copy(unf.face(e, 0), unf.face(e, 0) + nv, outf.face(e, 0));
    }
  }

  // Bounds from the pre-stage solution, then limit.
  (void)stats;
  for (int e = 0; e < ne; ++e) {
    if (frozen[e]) {
      same_as_un_[e] = 1;
      alpha_last_[e] = 0.0;  // flat element: the eps rule pins alpha to zero
      changed_last_[e] = 0;
      step_alpha_[e] = 0.0;
      continue;
    }
    same_as_un_[e] = 0;
    gather_stencil(e, v, vf, ghosts_, mesh_, stencil_);
    BoundsSet b;
    try {
      b = integrate_bounds({stencil_.data(), stencil_.size()}, kin_, gas_, bw_);
    } catch (const solver_error& err) {
      throw numerical_error(std::string(err.what()) + " [bounds for element " +
                            std::to_string(e) + ", stage " + std::to_string(stage) + ", t = " +
                            std::to_string(t_stage) + "]");
    }
    b = apply_density_floor(b, lim_.density_floor);
    const StageOut so = limit_one(e, out.elem(e), outf.face(e, 0), outf.nfaces * outf.nf, b,
                                  t_stage, stage);
    alpha_last_[e] = so.alpha_min;
    changed_last_[e] = so.changed ? 1 : 0;
    step_alpha_[e] = std::min(step_alpha_[e], so.alpha_min);
    if (so.changed) step_changed_[e] = 1;
    if (so.pressure_pass) step_ppass_[e] = 1;
  }

  if (ctrl_.check_admissibility) {
    for (int e = 0; e < ne; ++e)
      for (const State& w : out.elem(e))
        if (!admissible(w, gas_))
          throw admissibility_error("inadmissible stage solution [element " + std::to_string(e) +
                                    ", stage " + std::to_string(stage) + ", t = " +
                                    std::to_string(t_stage) + "]");
  }
}

void Stepper::initial_limit(Field& u, FaceField& uf, double t) {
  const int ne = mesh_.n_total();
  compute_ghosts(uf, mesh_, basis_, bc_, t, gas_, ghosts_);
  StepStats stats;
  for (int e = 0; e < ne; ++e) {
    gather_stencil(e, u, uf, ghosts_, mesh_, stencil_);
    BoundsSet b = integrate_bounds({stencil_.data(), stencil_.size()}, kin_, gas_, bw_);
    b = apply_density_floor(b, lim_.density_floor);
    const StageOut so =
        limit_one(e, u.elem(e), uf.face(e, 0), uf.nfaces * uf.nf, b, t, -1);
    alpha_last_[e] = so.alpha_min;
    changed_last_[e] = so.changed ? 1 : 0;
  }
}

StepStats Stepper::step(Field& u, FaceField& uf, double t, double dt) {
  StepStats stats;
  const int ne = mesh_.n_total();
  std::fill(same_as_un_.begin(), same_as_un_.end(), 0);
  step_alpha_.assign(ne, 1.0);
  step_changed_.assign(ne, 0);
  step_ppass_.assign(ne, 0);

  // u1 = u + dt L(u)
  substage(u, uf, u, uf, 0.0, 1.0, dt, t, 0, stage_a_, faces_a_, stats);
  // u2 = 3/4 u + 1/4 (u1 + dt L(u1))
  substage(u, uf, stage_a_, faces_a_, 0.75, 0.25, dt, t + dt, 1, stage_b_, faces_b_, stats);
  // u^{n+1} = 1/3 u + 2/3 (u2 + dt L(u2))
  substage(u, uf, stage_b_, faces_b_, 1.0 / 3.0, 2.0 / 3.0, dt, t + 0.5 * dt, 2, stage_a_,
           faces_a_, stats);

  u.v.swap(stage_a_.v);
  uf.v.swap(faces_a_.v);

  for (int e = 0; e < ne; ++e) {
    if (step_alpha_[e] < 1.0) {
      stats.limited++;
      stats.min_alpha = std::min(stats.min_alpha, step_alpha_[e]);
    }
    if (step_changed_[e]) stats.changed++;
    if (step_ppass_[e]) stats.pressure_passes++;
  }
  return stats;
}

}  // namespace kldg
