#include "kldg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "kldg/basis.hpp"
#include "kldg/dg.hpp"
#include "kldg/limiter.hpp"

namespace kldg {

BoundsSet bounds_bruteforce_1d(std::span<const State> stencil, double k, double r_fac,
                               const GasModel& gas, long n_nodes) {
  const double dhalf = 0.5 * gas.delta();
  std::vector<double> rho, U, th;
  for (const State& w : stencil) {
    const Prim q = cons_to_prim(w, gas);
    rho.push_back(q.rho);
    U.push_back(q.ux);
    th.push_back(q.P / q.rho);
  }
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    lo = std::min(lo, U[i] - k * std::sqrt(th[i]));
    hi = std::max(hi, U[i] + k * std::sqrt(th[i]));
  }
  const double h = (hi - lo) / n_nodes;
  long double rmin = 0, rmax = 0, emin = 0, emax = 0, mmin = 0, mmax = 0;
  for (long i = 0; i < n_nodes; ++i) {
    const double u = lo + (i + 0.5) * h;
    double gsmall = 1e300, gbig = -1e300, hsmall = 1e300, hbig = -1e300;
    for (std::size_t m = 0; m < rho.size(); ++m) {
      const double g =
          rho[m] / std::sqrt(two_pi * th[m]) * std::exp(-(u - U[m]) * (u - U[m]) / (2.0 * th[m]));
      const double hv = g * (0.5 * u * u + th[m] * dhalf);
      gsmall = std::min(gsmall, g);
      gbig = std::max(gbig, g);
      hsmall = std::min(hsmall, hv);
      hbig = std::max(hbig, hv);
    }
    rmin += h * gsmall;
    rmax += h * gbig;
    emin += h * hsmall;
    emax += h * hbig;
    if (u < 0.0) {
      mmin += h * u * (1.0 + r_fac) * gbig;
      mmax += h * u * (1.0 - r_fac) * gsmall;
    } else {
      mmin += h * u * (1.0 - r_fac) * gsmall;
      mmax += h * u * (1.0 + r_fac) * gbig;
    }
  }
  BoundsSet b;
  b.lo.rho = (1.0 - r_fac) * static_cast<double>(rmin);
  b.hi.rho = (1.0 + r_fac) * static_cast<double>(rmax);
  b.lo.E = (1.0 - r_fac) * static_cast<double>(emin);
  b.hi.E = (1.0 + r_fac) * static_cast<double>(emax);
  b.lo.mx = static_cast<double>(mmin);
  b.hi.mx = static_cast<double>(mmax);
  return b;
}

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(eng);
  }
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }
};

State random_state(Rng& rng, const GasModel& gas) {
  Prim q;
  q.rho = rng.log_uniform(0.1, 10.0);
  q.ux = rng.uniform(-2.0, 2.0);
  q.uy = gas.d == 2 ? rng.uniform(-2.0, 2.0) : 0.0;
  q.P = rng.log_uniform(0.05, 5.0);
  return prim_to_cons(q, gas);
}

// Stencil with either a tight spread (smooth region) or O(1) jumps (shock).
std::vector<State> random_stencil(Rng& rng, const GasModel& gas, int size) {
  std::vector<State> s;
  const bool tight = rng.uniform(0.0, 1.0) < 0.5;
  if (tight) {
    const Prim q0 = cons_to_prim(random_state(rng, gas), gas);
    for (int i = 0; i < size; ++i) {
      Prim q = q0;
      q.rho *= 1.0 + rng.uniform(-0.05, 0.05);
      q.ux += rng.uniform(-0.05, 0.05);
      if (gas.d == 2) q.uy += rng.uniform(-0.05, 0.05);
      q.P *= 1.0 + rng.uniform(-0.05, 0.05);
      s.push_back(prim_to_cons(q, gas));
    }
  } else {
    for (int i = 0; i < size; ++i) s.push_back(random_state(rng, gas));
  }
  return s;
}

double mom_scale(const State& w, const GasModel& gas) {
  const double th = pressure(w, gas) / w.rho;
  const double uu = std::sqrt(w.mx * w.mx + w.my * w.my) / w.rho;
  return w.rho * (uu + std::sqrt(th));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult check_constant_states(Rng& rng, int d, int count, const KineticConfig& cfg,
                                  double tol) {
  const GasModel gas(1.4, d);
  double worst = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    const State w0 = random_state(rng, gas);
    const std::vector<State> stencil(4, w0);
    const BoundsSet b = integrate_bounds(stencil, cfg, gas);
    for (int c = 0; c < gas.ncomp(); ++c) {
      const double ref = w0.comp(c, d);
      const double scale =
          (c >= 1 && c <= d) ? std::max(std::abs(ref), mom_scale(w0, gas)) : std::abs(ref);
      worst = std::max(worst, std::abs(b.lo.comp(c, d) - ref) / scale);
      worst = std::max(worst, std::abs(b.hi.comp(c, d) - ref) / scale);
    }
  }
  CheckResult r;
  r.name = d == 1 ? "theorem1_constant_states_1d" : "theorem1_constant_states_2d";
  r.pass = worst <= tol;
  r.detail = "max componentwise deviation " + fmt(worst) + " (tol " + fmt(tol) + ")";
  return r;
}

CheckResult check_positivity(Rng& rng, int stencils, int samples) {
  const GasModel gas(1.4, 1);
  KineticConfig cfg;
  cfg.k_extent = 8.0;
  cfg.n_per_axis = 2048;
  cfg.r_fac = 1e-3;
  long rho_min_viol = 0, rho_viol = 0, e_viol = 0;
  long total = 0;
  double worst_e = 1e300;
  for (int t = 0; t < stencils; ++t) {
    const auto stencil = random_stencil(rng, gas, 2 + static_cast<int>(rng.uniform(0.0, 6.0)));
    const BoundsSet b = integrate_bounds(stencil, cfg, gas);
    if (!(b.lo.rho > 0.0)) ++rho_min_viol;
    for (int s = 0; s < samples; ++s) {
      State w;
      w.rho = rng.uniform(b.lo.rho, b.hi.rho);
      w.mx = rng.uniform(b.lo.mx, b.hi.mx);
      w.E = rng.uniform(b.lo.E, b.hi.E);
      ++total;
      if (!(w.rho > 0.0)) ++rho_viol;
      const double rhoe = w.E - 0.5 * w.mx * w.mx / w.rho;
      worst_e = std::min(worst_e, rhoe);
      if (!(rhoe > 0.0)) ++e_viol;
    }
  }
  CheckResult r;
  r.name = "theorem2_positivity";
  r.pass = rho_min_viol == 0 && rho_viol == 0 && e_viol == 0;
  r.detail = "rho_min>0 violations: " + std::to_string(rho_min_viol) +
             ", box-sample rho violations: " + std::to_string(rho_viol) + "/" +
             std::to_string(total) + ", rho*e violations: " + std::to_string(e_viol) + "/" +
             std::to_string(total) + " (min rho*e seen " + fmt(worst_e) + ")";
  return r;
}

CheckResult check_riemann_averaged(Rng& rng, int count) {
  const GasModel gas(1.4, 1);
  KineticConfig cfg;
  cfg.k_extent = 8.0;
  cfg.n_per_axis = 2048;
  cfg.r_fac = 0.0;
  double worst = 0.0;
  for (int t = 0; t < count; ++t) {
    const State wi = random_state(rng, gas);
    const State wj = random_state(rng, gas);
    const std::vector<State> stencil{wi, wj};
    const BoundsSet b = integrate_bounds(stencil, cfg, gas);
    const VelocityGrid grid = make_velocity_grid(stencil, cfg, gas);
    const double lam = grid.u_max();
    const double n = rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    const State fi = flux_axis(wi, 0, gas);
    const State fj = flux_axis(wj, 0, gas);
    const State bar = 0.5 * (wi + wj) - (n / (2.0 * lam)) * (fj - fi);
    for (int c = 0; c < gas.ncomp(); ++c) {
      const double v = bar.comp(c, 1);
      const double lo = b.lo.comp(c, 1), hi = b.hi.comp(c, 1);
      const double scale = std::max({std::abs(lo), std::abs(hi), std::abs(v), 1e-300});
      worst = std::max(worst, (lo - v) / scale);
      worst = std::max(worst, (v - hi) / scale);
    }
  }
  CheckResult r;
  r.name = "theorem3_riemann_averaged_states";
  r.pass = worst <= 1e-9;
  r.detail = "max relative excursion outside the box " + fmt(worst) + " (tol 1e-9)";
  return r;
}

CheckResult check_limiter_contract(Rng& rng, int count) {
  const GasModel gas(1.4, 1);
  const Basis basis(3);
  const int nn = basis.n();
  const int nf = 2;
  LimiterConfig lim;
  double worst_box = 0.0, worst_mean = 0.0, worst_p = 1e300;
  bool pass = true;
  for (int t = 0; t < count; ++t) {
    State mean = random_state(rng, gas);
    // box around the mean, occasionally tight in one component
    BoundsSet b;
    for (int c = 0; c < 3; ++c) {
      const double scale = std::abs(mean.comp(c, 1)) + 0.5;
      b.lo.comp(c, 1) = mean.comp(c, 1) - rng.log_uniform(1e-3, 1.0) * scale;
      b.hi.comp(c, 1) = mean.comp(c, 1) + rng.log_uniform(1e-3, 1.0) * scale;
    }
    b = apply_density_floor(b);
    // nodal data: mean plus zero-mean (in the quadrature sense) fluctuations
    std::vector<State> nodes(nn + nf);
    State acc{};
    for (int i = 0; i < nn; ++i) {
      State d;
      d.rho = rng.uniform(-1.0, 1.0);
      d.mx = rng.uniform(-1.0, 1.0);
      d.E = rng.uniform(-1.0, 1.0);
      nodes[i] = d;
      acc = acc + basis.weights[i] * d;
    }
    acc = (1.0 / 2.0) * acc;
    for (int i = 0; i < nn; ++i) {
      nodes[i] = mean + (nodes[i] - acc);
    }
    // face values: Lagrange extrapolation of the nodal fluctuations
    for (int fface = 0; fface < 2; ++fface) {
      State fv{};
      const auto& l = fface == 0 ? basis.interp_lo : basis.interp_hi;
      for (int i = 0; i < nn; ++i) fv = fv + l[i] * nodes[i];
      nodes[nn + fface] = fv;
    }
    try {
      (void)limit_element({nodes.data(), nodes.size()}, mean, b, gas, lim);
      const auto ap = pressure_floor_pass({nodes.data(), nodes.size()}, mean, gas,
                                          lim.pressure_floor);
      (void)ap;
    } catch (const solver_error&) {
      pass = false;
      continue;
    }
    for (int c = 0; c < 3; ++c) {
      const double lo = b.lo.comp(c, 1), hi = b.hi.comp(c, 1);
      const double tol = 1e-12 * (hi - lo);
      for (const State& w : nodes) {
        const double v = w.comp(c, 1);
        worst_box = std::max({worst_box, (lo - v) - tol, (v - hi) - tol});
        if (v < lo - tol || v > hi + tol) pass = false;
      }
    }
    const State post_mean = element_mean({nodes.data(), static_cast<std::size_t>(nn)}, basis, 1);
    for (int c = 0; c < 3; ++c) {
      const double rel = std::abs(post_mean.comp(c, 1) - mean.comp(c, 1)) /
                         std::max(1.0, std::abs(mean.comp(c, 1)));
      worst_mean = std::max(worst_mean, rel);
    }
    for (const State& w : nodes) worst_p = std::min(worst_p, pressure(w, gas));
  }
  if (worst_mean > 1e-14) pass = false;
  if (!(worst_p >= 1e-12 * (1.0 - 1e-12))) pass = false;
  CheckResult r;
  r.name = "corollary_limiter_contract";
  r.pass = pass;
  r.detail = "max box excursion " + fmt(worst_box) + ", max mean drift " + fmt(worst_mean) +
             ", min nodal pressure " + fmt(worst_p);
  return r;
}

CheckResult check_oracle(const GasModel& gas) {
  const State wl = prim_to_cons({1.0, 0.0, 0.0, 1.0}, gas);
  const State wr = prim_to_cons({0.125, 0.0, 0.0, 0.1}, gas);
  const std::vector<State> stencil{wl, wr};
  KineticConfig cfg;
  cfg.k_extent = 8.0;
  cfg.n_per_axis = 2048;
  cfg.r_fac = 0.0;
  const BoundsSet b = integrate_bounds(stencil, cfg, gas);
  const BoundsSet o = bounds_bruteforce_1d(stencil, 8.0, 0.0, gas, 1000000);
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double scale = std::max({std::abs(o.lo.comp(c, 1)), std::abs(o.hi.comp(c, 1)), 1e-30});
    worst = std::max(worst, std::abs(b.lo.comp(c, 1) - o.lo.comp(c, 1)) / scale);
    worst = std::max(worst, std::abs(b.hi.comp(c, 1) - o.hi.comp(c, 1)) / scale);
  }
  CheckResult r;
  r.name = "oracle_equivalence_sod";
  r.pass = worst <= 1e-6;
  r.detail = "max relative deviation from 1e6-node midpoint oracle " + fmt(worst) +
             " (tol 1e-6)";
  return r;
}

CheckResult check_monotonicity(Rng& rng, int count) {
  const GasModel gas(1.4, 1);
  KineticConfig cfg;
  cfg.k_extent = 8.0;
  cfg.n_per_axis = 1024;
  cfg.r_fac = 0.0;
  double worst = 0.0;
  for (int t = 0; t < count; ++t) {
    auto stencil = random_stencil(rng, gas, 3);
    const BoundsSet b0 = integrate_bounds(stencil, cfg, gas);
    stencil.push_back(random_state(rng, gas));
    const BoundsSet b1 = integrate_bounds(stencil, cfg, gas);
    for (int c = 0; c < 3; ++c) {
      const double scale = std::max(
          {std::abs(b0.lo.comp(c, 1)), std::abs(b0.hi.comp(c, 1)), 1e-300});
      worst = std::max(worst, (b1.lo.comp(c, 1) - b0.lo.comp(c, 1)) / scale);
      worst = std::max(worst, (b0.hi.comp(c, 1) - b1.hi.comp(c, 1)) / scale);
    }
  }
  CheckResult r;
  r.name = "stencil_monotonicity";
  r.pass = worst <= 1e-12;
  r.detail = "max box shrinkage when adding a state " + fmt(worst) + " (tol 1e-12)";
  return r;
}

}  // namespace

std::vector<CheckResult> verify_properties(std::uint64_t seed, bool quick) {
  std::vector<CheckResult> out;
  const int n1 = quick ? 100 : 1000;
  const int n2s = quick ? 100 : 1000;
  const int n2x = quick ? 100 : 1000;
  const int n4 = quick ? 1000 : 10000;

  {
    Rng rng(seed + 1);
    KineticConfig cfg;
    cfg.k_extent = 8.0;
    cfg.n_per_axis = 2048;
    cfg.r_fac = 0.0;
    out.push_back(check_constant_states(rng, 1, n1, cfg, 1e-10));
  }
  {
    Rng rng(seed + 2);
    KineticConfig cfg;
    cfg.k_extent = 4.0;
    cfg.n_per_axis = 32;
    cfg.r_fac = 0.0;
    out.push_back(check_constant_states(rng, 2, quick ? 50 : 1000, cfg, 2e-3));
  }
  {
    Rng rng(seed + 3);
    out.push_back(check_positivity(rng, n2s, n2x));
  }
  {
    Rng rng(seed + 4);
    out.push_back(check_riemann_averaged(rng, n1));
  }
  {
    Rng rng(seed + 5);
    out.push_back(check_limiter_contract(rng, n4));
  }
  out.push_back(check_oracle(GasModel(1.4, 1)));
  {
    Rng rng(seed + 6);
    out.push_back(check_monotonicity(rng, quick ? 50 : 200));
  }
  return out;
}

}  // namespace kldg
