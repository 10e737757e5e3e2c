#include "kldg/driver.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "kldg/basis.hpp"
#include "kldg/io.hpp"

namespace kldg {

namespace {

void sample_initial(const CaseSpec& spec, const Mesh& mesh, const Basis& basis,
                    const GasModel& gas, Field& u) {
  for (int e = 0; e < mesh.n_total(); ++e) {
    auto w = u.elem(e);
    for (int i = 0; i < u.nn; ++i) {
      const Prim q = spec.initial(node_position(mesh, basis, e, i));
      if (!(q.rho > 0.0) || !(q.P > 0.0))
        throw admissibility_error("initial condition inadmissible in case " + spec.name);
      w[i] = prim_to_cons(q, gas);
    }
  }
}

}  // namespace

RunReport run(const RunConfig& config, bool write_outputs) {
  const auto t_start = std::chrono::steady_clock::now();

  CaseSpec spec = make_case(config.case_name, config.elements, config.gamma);
  if (config.t_end) spec.t_end = *config.t_end;
  const GasModel gas(spec.gamma, spec.d);
  const Mesh mesh = make_mesh(spec, config.elements);
  const Basis basis(config.p);
  const RiemannChoice flux =
      config.riemann ? riemann_from_string(*config.riemann) : spec.default_flux;

  KineticConfig kin = config.kinetic;
  if (config.strict_bounds) kin.r_fac = 0.0;
  kin.validate();

  StepControl ctrl;
  ctrl.cfl = config.cfl;
  ctrl.t_end = spec.t_end;
  ctrl.dt_fixed = config.dt_fixed;
  ctrl.check_admissibility = config.check_admissibility;

  RunReport rep;
  rep.mesh = mesh;
  rep.gas = gas;

  Field u(mesh, basis);
  FaceField uf(mesh, basis);
  sample_initial(spec, mesh, basis, gas, u);
  interpolate_to_faces(u, basis, mesh, uf);

  Stepper stepper(mesh, basis, gas, flux, spec.bc, kin, config.limiter, ctrl);
  stepper.initial_limit(u, uf, 0.0);

  const std::string prefix = config.output.prefix.empty() ? spec.name : config.output.prefix;
  const std::filesystem::path outdir(config.output.dir);
  if (write_outputs) std::filesystem::create_directories(outdir);

  const auto write_snapshot = [&](const std::string& tag) {
    if (!write_outputs) return;
    if (config.output.csv) {
      const auto path = (outdir / (prefix + "_" + tag + ".csv")).string();
      write_solution_csv(path, u, mesh, basis, gas, stepper.last_alpha());
      rep.files.push_back(path);
    }
    if (config.output.binary && mesh.d == 2) {
      const auto path = (outdir / (prefix + "_" + tag + ".kldg")).string();
      write_solution_binary(path, u, mesh, basis);
      rep.files.push_back(path);
    }
  };

  std::vector<double> pending = config.output.times;
  std::sort(pending.begin(), pending.end());

  double t = 0.0;
  long steps = 0;
  std::size_t next_out = 0;
  RunReport::LimiterWindow window;
  long window_steps = 0;
  const int ne = mesh.n_total();
  const double t_eps = 1e-12 * std::max(1.0, spec.t_end);

  while (t < spec.t_end - t_eps) {
    double dt = ctrl.dt_fixed ? *ctrl.dt_fixed : compute_dt(u, mesh, basis, ctrl.cfl, gas);
    if (t + dt > spec.t_end) dt = spec.t_end - t;  // land exactly on t_end
    const StepStats st = stepper.step(u, uf, t, dt);
    t += dt;
    ++steps;
    ++window_steps;
    window.frac_limited += static_cast<double>(st.limited) / ne;
    window.frac_changed += static_cast<double>(st.changed) / ne;
    window.min_alpha = std::min(window.min_alpha, st.min_alpha);
    window.pressure_passes += st.pressure_passes;
    while (next_out < pending.size() && t >= pending[next_out] - t_eps) {
      write_snapshot("t" + std::to_string(next_out));
      ++next_out;
      window.t = t;
      if (window_steps > 0) {
        window.frac_limited /= window_steps;
        window.frac_changed /= window_steps;
      }
      rep.limiter_stats.push_back(window);
      window = RunReport::LimiterWindow{};
      window_steps = 0;
    }
  }
  window.t = t;
  if (window_steps > 0) {
    window.frac_limited /= window_steps;
    window.frac_changed /= window_steps;
  }
  rep.limiter_stats.push_back(window);
  write_snapshot("final");

  // Error norms against a pointwise reference, when the case provides one.
  if (spec.reference == ReferenceKind::exact_riemann ||
      spec.reference == ReferenceKind::analytic_pulse) {
    const double tf = t;
    rep.norms = norms_vs_reference(u, mesh, basis, gas, [&](const std::array<double, 2>& x) {
      return *reference_solution(spec, x[0], tf, gas);
    });
  }

  rep.final_time = t;
  rep.steps = steps;
  rep.solution = std::move(u);
  rep.faces = std::move(uf);
  rep.last_alpha = stepper.last_alpha();
  rep.last_changed = stepper.last_changed();
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  if (write_outputs) {
    nlohmann::json jr;
    jr["config"] = config_to_json(config);
    jr["final_time"] = rep.final_time;
    jr["steps"] = rep.steps;
    jr["wall_seconds"] = rep.wall_seconds;
    jr["files"] = rep.files;
    nlohmann::json stats = nlohmann::json::array();
    for (const auto& w : rep.limiter_stats)
      stats.push_back({{"t", w.t},
                       {"frac_limited", w.frac_limited},
                       {"frac_changed", w.frac_changed},
                       {"min_alpha", w.min_alpha},
                       {"pressure_passes", w.pressure_passes}});
    jr["limiter"] = stats;
    if (!rep.norms.empty()) jr["norms"] = rep.norms;
    std::ofstream rout(outdir / (prefix + "_report.json"));
    rout << jr.dump(2) << "\n";
  }
  return rep;
}

}  // namespace kldg
