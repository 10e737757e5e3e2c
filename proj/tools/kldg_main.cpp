// Command-line driver: run a configured simulation, build convergence
// tables, run the property suites, or emit reference profiles.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kldg/basis.hpp"
#include "kldg/driver.hpp"
#include "kldg/io.hpp"
#include "kldg/verify.hpp"

namespace {

using namespace kldg;

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides) {
  std::ifstream in(config_path);
  if (!in) throw io_error("cannot open config file: " + config_path);
  nlohmann::json j;
  in >> j;
  for (const auto& kv : overrides) apply_override(j, kv);
  const RunConfig cfg = parse_config(j);
  const RunReport rep = run(cfg);
  std::printf("case=%s p=%d N=%dx%d steps=%ld t=%.6g wall=%.2fs\n", cfg.case_name.c_str(), cfg.p,
              cfg.elements[0], cfg.elements[1], rep.steps, rep.final_time, rep.wall_seconds);
  for (const auto& [k, v] : rep.norms) std::printf("  %s = %.6e\n", k.c_str(), v);
  for (const auto& f : rep.files) std::printf("  wrote %s\n", f.c_str());
  return 0;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw config_error("empty list: " + s);
  return out;
}

int cmd_convergence(const std::string& config_path, const std::string& orders,
                    const std::string& meshes, const std::vector<std::string>& overrides) {
  std::ifstream in(config_path);
  if (!in) throw io_error("cannot open config file: " + config_path);
  nlohmann::json j;
  in >> j;
  for (const auto& kv : overrides) apply_override(j, kv);
  RunConfig base = parse_config(j);
  const auto ps = parse_int_list(orders);
  const auto ns = parse_int_list(meshes);
  const bool use_linf = base.case_name == "pulse";
  const std::string norm_key = use_linf ? "rho_linf" : "rho_l1";

  std::filesystem::create_directories(base.output.dir);
  const std::string csv_path = base.output.dir + "/" + base.case_name + "_convergence.csv";
  std::ofstream csv(csv_path);
  csv << "p,N,error,rate\n";

  std::printf("%-6s", "N");
  for (const int p : ps) std::printf("  P%-11d rate    ", p);
  std::printf("\n");

  std::vector<std::vector<double>> errs(ps.size());
  for (std::size_t ip = 0; ip < ps.size(); ++ip) {
    for (const int n : ns) {
      RunConfig cfg = base;
      cfg.p = ps[ip];
      cfg.elements = {n, base.elements[1] > 1 ? n : 1};
      const RunReport rep = run(cfg, false);
      if (!rep.norms.count(norm_key)) throw numerical_error("case has no reference norms");
      errs[ip].push_back(rep.norms.at(norm_key));
    }
  }
  std::vector<double> nsd(ns.begin(), ns.end());
  for (std::size_t in_ = 0; in_ < ns.size(); ++in_) {
    std::printf("%-6d", ns[in_]);
    for (std::size_t ip = 0; ip < ps.size(); ++ip) {
      double rate = 0.0;
      if (in_ > 0)
        rate = std::log(errs[ip][in_ - 1] / errs[ip][in_]) / std::log(nsd[in_] / nsd[in_ - 1]);
      std::printf("  %.3e  %-6.3f", errs[ip][in_], in_ > 0 ? rate : 0.0);
      csv << ps[ip] << "," << ns[in_] << "," << errs[ip][in_] << "," << (in_ > 0 ? rate : 0.0)
          << "\n";
    }
    std::printf("\n");
  }
  std::printf("%-6s", "avg");
  for (std::size_t ip = 0; ip < ps.size(); ++ip) {
    const auto cr = convergence_rates(errs[ip], nsd);
    std::printf("  %-11s %-6.3f", "", cr.average);
  }
  std::printf("\n");
  std::printf("wrote %s\n", csv_path.c_str());
  return 0;
}

int cmd_verify(std::uint64_t seed, bool quick) {
  const auto results = verify_properties(seed, quick);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    all = all && r.pass;
  }
  return all ? 0 : 3;
}

int cmd_reference(const std::string& case_name, int samples, double time,
                  const std::string& out_path) {
  const CaseSpec spec = make_case(case_name, {samples, 1});
  const GasModel gas(spec.gamma, 1);
  const double t = time >= 0.0 ? time : spec.t_end;
  std::FILE* f = std::fopen(out_path.c_str(), "w");
  if (!f) throw io_error("cannot open for writing: " + out_path);
  std::fprintf(f, "x,rho,ux,P\n");
  if (spec.reference == ReferenceKind::godunov_reference) {
    const int n = std::max(samples, 1000);
    std::vector<State> init(n);
    const double h = (spec.xmax[0] - spec.xmin[0]) / n;
    for (int i = 0; i < n; ++i)
      init[i] = prim_to_cons(spec.initial({spec.xmin[0] + (i + 0.5) * h, 0.0}), gas);
    std::vector<double> centers;
    const auto sol = godunov_reference(init, spec.xmin[0], spec.xmax[0], t, gas, 0.9, &centers);
    for (int i = 0; i < n; ++i) {
      const Prim q = cons_to_prim(sol[i], gas);
      std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", centers[i], q.rho, q.ux, q.P);
    }
  } else {
    for (int i = 0; i < samples; ++i) {
      const double x =
          spec.xmin[0] + (i + 0.5) * (spec.xmax[0] - spec.xmin[0]) / samples;
      const auto q = reference_solution(spec, x, t, gas);
      if (!q) throw config_error("case has no pointwise reference: " + case_name);
      std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", x, q->rho, q->ux, q->P);
    }
  }
  std::fclose(f);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kldg: kinetic-bounds limited discontinuous Galerkin Euler solver"};
  app.require_subcommand(1);

  std::string config_path, orders = "2,3", meshes = "25,50,100", case_name, ref_out = "reference.csv";
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool quick = false;
  int samples = 2000;
  double ref_time = -1.0;

  auto* c_run = app.add_subcommand("run", "run one configured simulation");
  c_run->add_option("config", config_path)->required();
  c_run->add_option("--override", overrides, "key=value (dotted paths)");

  auto* c_conv = app.add_subcommand("convergence", "run a refinement study");
  c_conv->add_option("config", config_path)->required();
  c_conv->add_option("--orders", orders);
  c_conv->add_option("--meshes", meshes);
  c_conv->add_option("--override", overrides, "key=value (dotted paths)");

  auto* c_ver = app.add_subcommand("verify", "run the property suites");
  c_ver->add_option("--seed", seed);
  c_ver->add_flag("--quick", quick);

  auto* c_ref = app.add_subcommand("reference", "emit a reference profile");
  c_ref->add_option("case", case_name)->required();
  c_ref->add_option("--samples", samples);
  c_ref->add_option("--time", ref_time);
  c_ref->add_option("--out", ref_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_run->parsed()) return cmd_run(config_path, overrides);
    if (c_conv->parsed()) return cmd_convergence(config_path, orders, meshes, overrides);
    if (c_ver->parsed()) return cmd_verify(seed, quick);
    if (c_ref->parsed()) return cmd_reference(case_name, samples, ref_time, ref_out);
  } catch (const kldg::config_error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const kldg::solver_error& e) {
    std::fprintf(stderr, "runtime abort: %s\n", e.what());
    return 3;
  }
  return 0;
}
