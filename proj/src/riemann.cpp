#include "kldg/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace kldg {

RiemannChoice riemann_from_string(const std::string& name) {
  if (name == "rusanov") return RiemannChoice::rusanov;
  if (name == "hll") return RiemannChoice::hll;
  if (name == "hllc") return RiemannChoice::hllc;
  if (name == "exact") return RiemannChoice::exact;
  throw config_error("unknown riemann solver: " + name);
}

std::string to_string(RiemannChoice c) {
  switch (c) {
    case RiemannChoice::rusanov: return "rusanov";
    case RiemannChoice::hll: return "hll";
    case RiemannChoice::hllc: return "hllc";
    case RiemannChoice::exact: return "exact";
  }
  return "?";
}

namespace {

struct Sided {
  double rho, u, ut, P, c, E;
};

Sided side(const State& w, int axis, const GasModel& gas) {
  const double P = pressure(w, gas);
  if (!(w.rho > 0.0) || !(P > 0.0))
    throw admissibility_error("numerical flux: inadmissible input state");
  Sided s;
  s.rho = w.rho;
  s.u = w.mom(axis) / w.rho;
  s.ut = gas.d == 2 ? w.mom(1 - axis) / w.rho : 0.0;
  s.P = P;
  s.c = std::sqrt(gas.gamma * P / w.rho);
  s.E = w.E;
  return s;
}

}  // namespace

State rusanov_flux(const State& wl, const State& wr, int axis, const GasModel& gas) {
  if (wl == wr) return flux_axis(wl, axis, gas);
  const Sided l = side(wl, axis, gas);
  const Sided r = side(wr, axis, gas);
  const double lam = std::max(std::abs(l.u) + l.c, std::abs(r.u) + r.c);
  const State fl = flux_axis(wl, axis, gas);
  const State fr = flux_axis(wr, axis, gas);
  return 0.5 * (fl + fr) - (0.5 * lam) * (wr - wl);
}

State hll_flux(const State& wl, const State& wr, int axis, const GasModel& gas) {
  if (wl == wr) return flux_axis(wl, axis, gas);
  const Sided l = side(wl, axis, gas);
  const Sided r = side(wr, axis, gas);
  const double sl = std::min(l.u - l.c, r.u - r.c);
  const double sr = std::max(l.u + l.c, r.u + r.c);
  if (sl >= 0.0) return flux_axis(wl, axis, gas);
  if (sr <= 0.0) return flux_axis(wr, axis, gas);
  const State fl = flux_axis(wl, axis, gas);
  const State fr = flux_axis(wr, axis, gas);
  const double inv = 1.0 / (sr - sl);
  return inv * ((sr * fl - sl * fr) + (sl * sr) * (wr - wl));
}

State hllc_flux(const State& wl, const State& wr, int axis, const GasModel& gas) {
  if (wl == wr) return flux_axis(wl, axis, gas);
  const Sided l = side(wl, axis, gas);
  const Sided r = side(wr, axis, gas);
  const double sl = std::min(l.u - l.c, r.u - r.c);
  const double sr = std::max(l.u + l.c, r.u + r.c);
  if (sl >= 0.0) return flux_axis(wl, axis, gas);
  if (sr <= 0.0) return flux_axis(wr, axis, gas);
  const double dl = l.rho * (sl - l.u);
  const double dr = r.rho * (sr - r.u);
  const double denom = dl - dr;
  const double s_star = (r.P - l.P + l.u * dl - r.u * dr) / denom;
  if (!std::isfinite(s_star) || !(sl < s_star) || !(s_star < sr))
    return hll_flux(wl, wr, axis, gas);  // degenerate ordering

  const auto star_state = [&](const Sided& s, const State& w, double sk) {
    const double fact = s.rho * (sk - s.u) / (sk - s_star);
    State ws;
    ws.rho = fact;
    ws.mom(axis) = fact * s_star;
    if (gas.d == 2) ws.mom(1 - axis) = fact * s.ut;
    ws.E = fact * (w.E / s.rho + (s_star - s.u) * (s_star + s.P / (s.rho * (sk - s.u))));
    return ws;
  };

  if (s_star >= 0.0) {
    const State fl = flux_axis(wl, axis, gas);
    return fl + sl * (star_state(l, wl, sl) - wl);
  }
  const State fr = flux_axis(wr, axis, gas);
  return fr + sr * (star_state(r, wr, sr) - wr);
}

namespace {

// Toro pressure function and derivative for one side.
void pressure_fn(double p, const Prim& q, double c, const GasModel& gas, double& f,
                 double& df) {
  const double g = gas.gamma;
  if (p > q.P) {  // shock
    const double A = 2.0 / ((g + 1.0) * q.rho);
    const double B = (g - 1.0) / (g + 1.0) * q.P;
    const double sq = std::sqrt(A / (p + B));
    f = (p - q.P) * sq;
    df = sq * (1.0 - 0.5 * (p - q.P) / (p + B));
  } else {  // rarefaction
    const double pr = p / q.P;
    f = 2.0 * c / (g - 1.0) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
    df = 1.0 / (q.rho * c) * std::pow(pr, -(g + 1.0) / (2.0 * g));
  }
}

}  // namespace

RiemannStar solve_star(const Prim& ql, const Prim& qr, const GasModel& gas) {
  const double g = gas.gamma;
  const double cl = std::sqrt(g * ql.P / ql.rho);
  const double cr = std::sqrt(g * qr.P / qr.rho);
  const double du = qr.ux - ql.ux;
  if (2.0 * (cl + cr) / (g - 1.0) <= du)
    throw vacuum_error("exact_riemann: initial data generate vacuum");

  // PVRS guess, clamped positive.
  double p = 0.5 * (ql.P + qr.P) - 0.125 * du * (ql.rho + qr.rho) * (cl + cr);
  p = std::max(p, 1e-14 * std::min(ql.P, qr.P));

  RiemannStar st;
  double fl, fr, dfl, dfr;
  for (int it = 0; it < 100; ++it) {
    pressure_fn(p, ql, cl, gas, fl, dfl);
    pressure_fn(p, qr, cr, gas, fr, dfr);
    const double f = fl + fr + du;
    const double dp = f / (dfl + dfr);
    double pn = p - dp;
    if (pn <= 0.0) pn = 0.5 * p;  // keep iterate positive
    st.iterations = it + 1;
    if (std::abs(pn - p) <= 1e-12 * std::max(pn, p)) {
      p = pn;
      pressure_fn(p, ql, cl, gas, fl, dfl);
      pressure_fn(p, qr, cr, gas, fr, dfr);
      st.p = p;
      st.u = 0.5 * (ql.ux + qr.ux) + 0.5 * (fr - fl);
      return st;
    }
    p = pn;
  }
  throw numerical_error("exact_riemann: star pressure iteration did not converge");
}

Prim exact_riemann(const Prim& ql_in, const Prim& qr_in, const GasModel& gas, double xi,
                   int axis) {
  // Work in the axis-aligned frame: u is the normal velocity, ut tangential.
  Prim ql = ql_in, qr = qr_in;
  if (axis == 1) {
    std::swap(ql.ux, ql.uy);
    std::swap(qr.ux, qr.uy);
  }
  const double g = gas.gamma;
  const double cl = std::sqrt(g * ql.P / ql.rho);
  const double cr = std::sqrt(g * qr.P / qr.rho);
  const RiemannStar st = solve_star(ql, qr, gas);
  const double ps = st.p, us = st.u;

  Prim out;
  double rho, u, P, ut;
  if (xi <= us) {  // left of contact
    ut = ql.uy;
    if (ps > ql.P) {  // left shock
      const double sl =
          ql.ux - cl * std::sqrt((g + 1.0) / (2.0 * g) * ps / ql.P + (g - 1.0) / (2.0 * g));
      if (xi <= sl) {
        rho = ql.rho; u = ql.ux; P = ql.P;
      } else {
        const double pr = ps / ql.P;
        const double gr = (g - 1.0) / (g + 1.0);
        rho = ql.rho * (pr + gr) / (gr * pr + 1.0);
        u = us; P = ps;
      }
    } else {  // left rarefaction
      const double shl = ql.ux - cl;
      const double csl = cl * std::pow(ps / ql.P, (g - 1.0) / (2.0 * g));
      const double stl = us - csl;
      if (xi <= shl) {
        rho = ql.rho; u = ql.ux; P = ql.P;
      } else if (xi >= stl) {
        rho = ql.rho * std::pow(ps / ql.P, 1.0 / g);
        u = us; P = ps;
      } else {
        const double f = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * cl) * (ql.ux - xi);
        rho = ql.rho * std::pow(f, 2.0 / (g - 1.0));
        u = 2.0 / (g + 1.0) * (cl + (g - 1.0) / 2.0 * ql.ux + xi);
        P = ql.P * std::pow(f, 2.0 * g / (g - 1.0));
      }
    }
  } else {  // right of contact
    ut = qr.uy;
    if (ps > qr.P) {  // right shock
      const double sr =
          qr.ux + cr * std::sqrt((g + 1.0) / (2.0 * g) * ps / qr.P + (g - 1.0) / (2.0 * g));
      if (xi >= sr) {
        rho = qr.rho; u = qr.ux; P = qr.P;
      } else {
        const double pr = ps / qr.P;
        const double gr = (g - 1.0) / (g + 1.0);
        rho = qr.rho * (pr + gr) / (gr * pr + 1.0);
        u = us; P = ps;
      }
    } else {  // right rarefaction
      const double shr = qr.ux + cr;
      const double csr = cr * std::pow(ps / qr.P, (g - 1.0) / (2.0 * g));
      const double str = us + csr;
      if (xi >= shr) {
        rho = qr.rho; u = qr.ux; P = qr.P;
      } else if (xi <= str) {
        rho = qr.rho * std::pow(ps / qr.P, 1.0 / g);
        u = us; P = ps;
      } else {
        const double f = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * cr) * (qr.ux - xi);
        rho = qr.rho * std::pow(f, 2.0 / (g - 1.0));
        u = 2.0 / (g + 1.0) * (-cr + (g - 1.0) / 2.0 * qr.ux + xi);
        P = qr.P * std::pow(f, 2.0 * g / (g - 1.0));
      }
    }
  }
  out.rho = rho;
  out.P = P;
  out.ux = u;
  out.uy = ut;
  if (axis == 1) std::swap(out.ux, out.uy);
  return out;
}

State exact_flux(const State& wl, const State& wr, int axis, const GasModel& gas) {
  if (wl == wr) return flux_axis(wl, axis, gas);
  const Prim ql = cons_to_prim(wl, gas);
  const Prim qr = cons_to_prim(wr, gas);
  const Prim qs = exact_riemann(ql, qr, gas, 0.0, axis);
  return flux_axis(prim_to_cons(qs, gas), axis, gas);
}

State numerical_flux(RiemannChoice c, const State& wl, const State& wr, int axis,
                     const GasModel& gas) {
  switch (c) {
    case RiemannChoice::rusanov: return rusanov_flux(wl, wr, axis, gas);
    case RiemannChoice::hll: return hll_flux(wl, wr, axis, gas);
    case RiemannChoice::hllc: return hllc_flux(wl, wr, axis, gas);
    case RiemannChoice::exact: return exact_flux(wl, wr, axis, gas);
  }
  throw config_error("numerical_flux: bad choice");
}

std::vector<State> godunov_reference(const std::vector<State>& initial, double x0, double x1,
                                     double t_end, const GasModel& gas, double cfl,
                                     std::vector<double>* centers) {
  const int n = static_cast<int>(initial.size());
  const double h = (x1 - x0) / n;
  std::vector<State> u = initial;
  std::vector<State> fl(n + 1);
  double t = 0.0;
  while (t < t_end) {
    double lam = 0.0;
    for (const State& w : u) lam = std::max(lam, max_wavespeed(w, {1.0, 0.0}, gas));
    double dt = cfl * h / lam;
    dt = std::min(dt, t_end - t);
    fl[0] = exact_flux(u[0], u[0], 0, gas);  // Dirichlet: ghost equals edge cell
    fl[n] = exact_flux(u[n - 1], u[n - 1], 0, gas);
    for (int i = 1; i < n; ++i) fl[i] = exact_flux(u[i - 1], u[i], 0, gas);
    const double r = dt / h;
    for (int i = 0; i < n; ++i) u[i] = u[i] - r * (fl[i + 1] - fl[i]);
    t += dt;
  }
  if (centers) {
    centers->resize(n);
    for (int i = 0; i < n; ++i) (*centers)[i] = x0 + (i + 0.5) * h;
  }
  return u;
}

}  // namespace kldg
