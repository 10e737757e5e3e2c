#include "kldg/kinetic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kldg/numeric.hpp"

namespace kldg {

double maxwellian(const State& w, const std::array<double, 2>& u, const GasModel& gas) {
  const Prim q = cons_to_prim(w, gas);
  const double theta = q.P / q.rho;
  double z = (u[0] - q.ux) * (u[0] - q.ux);
  if (gas.d == 2) z += (u[1] - q.uy) * (u[1] - q.uy);
  const double norm = q.rho / std::pow(two_pi * theta, 0.5 * gas.d);
  return norm * std::exp(-z / (2.0 * theta));
}

std::pair<std::array<double, 2>, std::array<double, 2>> truncated_domain(
    std::span<const State> stencil, double k, const GasModel& gas) {
  if (stencil.empty()) throw admissibility_error("truncated_domain: empty stencil");
  std::array<double, 2> lo{std::numeric_limits<double>::max(),
                           std::numeric_limits<double>::max()};
  std::array<double, 2> hi{std::numeric_limits<double>::lowest(),
                           std::numeric_limits<double>::lowest()};
  for (const State& w : stencil) {
    const Prim q = cons_to_prim(w, gas);
    const double st = std::sqrt(q.P / q.rho);
    for (int a = 0; a < gas.d; ++a) {
      const double U = a == 0 ? q.ux : q.uy;
      lo[a] = std::min(lo[a], U - k * st);
      hi[a] = std::max(hi[a], U + k * st);
    }
  }
  return {lo, hi};
}

std::pair<double, double> envelope_at(std::span<const State> stencil,
                                      const std::array<double, 2>& u, double r_fac,
                                      const GasModel& gas) {
  double fmin = std::numeric_limits<double>::max();
  double fmax = 0.0;
  for (const State& w : stencil) {
    const double g = maxwellian(w, u, gas);
    fmin = std::min(fmin, g);
    fmax = std::max(fmax, g);
  }
  return {(1.0 - r_fac) * fmin, (1.0 + r_fac) * fmax};
}

VelocityGrid make_velocity_grid(std::span<const State> stencil, const KineticConfig& cfg,
                                const GasModel& gas) {
  const auto [lo, hi] = truncated_domain(stencil, cfg.k_extent, gas);
  VelocityGrid grid;
  grid.d = gas.d;
  grid.lo = lo;
  grid.hi = hi;
  grid.n = {cfg.nodes_for(gas.d), cfg.nodes_for(gas.d)};
  return grid;
}

namespace {

// Deduplicate stencil members by exact (rho, U, theta) so that uniform
// regions cost a single envelope pass.
void collect_members(std::span<const State> stencil, const GasModel& gas, BoundsWorkspace& ws) {
  ws.m_rho.clear();
  ws.m_ux.clear();
  ws.m_uy.clear();
  ws.m_theta.clear();
  for (const State& w : stencil) {
    if (!(w.rho > 0.0)) throw admissibility_error("integrate_bounds: rho <= 0 in stencil");
    const double ux = w.mx / w.rho;
    const double uy = gas.d == 2 ? w.my / w.rho : 0.0;
    const double rhoe = w.E - kinetic_energy(w);
    if (!(rhoe > 0.0))
      throw admissibility_error("integrate_bounds: internal energy <= 0 in stencil");
    const double theta = (gas.gamma - 1.0) * rhoe / w.rho;
    bool dup = false;
    for (std::size_t i = 0; i < ws.m_rho.size(); ++i) {
      if (ws.m_rho[i] == w.rho && ws.m_ux[i] == ux && ws.m_uy[i] == uy &&
          ws.m_theta[i] == theta) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      ws.m_rho.push_back(w.rho);
      ws.m_ux.push_back(ux);
      ws.m_uy.push_back(uy);
      ws.m_theta.push_back(theta);
    }
  }
}

void fill_axis(BoundsWorkspace& ws, const VelocityGrid& grid, int axis) {
  const int n = grid.n[axis];
  ws.ax_nodes[axis].resize(n);
  ws.ax_w[axis].resize(n);
  ws.ax_q[axis].resize(n);
  ws.ax_wneg[axis].assign(n, 0.0);
  ws.ax_wpos[axis].assign(n, 0.0);
  const double h = grid.spacing(axis);
  for (int i = 0; i < n; ++i) {
    const double u = grid.node(axis, i);
    ws.ax_nodes[axis][i] = u;
    ws.ax_w[axis][i] = grid.weight_1d(axis, i);
    ws.ax_q[axis][i] = 0.5 * u * u;
  }
  // Half-domain rules for the sign-split momentum moments. The integrand
  // u f(u) vanishes at u = 0, so the rule for [lo, 0] only weights nodes
  // with u < 0 (and mirrored for [0, hi]). Plain trapezoid weights ending
  // near the cut would keep an O(h^2) boundary error, so each half uses
  // composite Simpson (all weights positive, so widening the envelope can
  // only widen the momentum bounds) plus a quadratic rule on the cut cell.
  const auto& un = ws.ax_nodes[axis];
  int last_neg = -1;
  for (int i = 0; i < n; ++i)
    if (un[i] < 0.0) last_neg = i;
  const int first_pos = [&] {
    for (int i = 0; i < n; ++i)
      if (un[i] > 0.0) return i;
    return n;
  }();

  // Simpson weights over the m+1 nodes start..start+m (m intervals),
  // written into w[] with a 3/8 block absorbing odd interval counts.
  const auto simpson_block = [&](std::vector<double>& w, int start, int m, bool block_at_end) {
    if (m <= 0) return;
    if (m == 1) {
      w[start] += 0.5 * h;
      w[start + 1] += 0.5 * h;
      return;
    }
    if (m == 2) {
      w[start] += h / 3.0;
      w[start + 1] += 4.0 * h / 3.0;
      w[start + 2] += h / 3.0;
      return;
    }
    int s_lo = start, s_m = m;
    if (m % 2 == 1) {  // peel a 3-interval 3/8 block
      const int b = block_at_end ? start + m - 3 : start;
      w[b] += 3.0 * h / 8.0;
      w[b + 1] += 9.0 * h / 8.0;
      w[b + 2] += 9.0 * h / 8.0;
      w[b + 3] += 3.0 * h / 8.0;
      if (block_at_end) {
        s_m = m - 3;
      } else {
        s_lo = start + 3;
        s_m = m - 3;
      }
    }
    for (int k = 0; k + 2 <= s_m; k += 2) {
      w[s_lo + k] += h / 3.0;
      w[s_lo + k + 1] += 4.0 * h / 3.0;
      w[s_lo + k + 2] += h / 3.0;
    }
  };

  // Cubic cut-cell rule on [u_a, 0]: integrate the cubic through the three
  // nodes nearest the cut and the exact zero of the integrand at u = 0. The
  // one small negative weight (on the second-nearest node) is strictly
  // dominated by that node's Simpson weight of at least 9h/8, so the
  // combined rule keeps every node weight positive.
  const auto cut_cell = [&](std::vector<double>& w, int a, double delta, int dir) {
    if (delta <= 0.0) return;
    const int p1 = a - dir, p2 = a - 2 * dir;
    const bool have2 = p2 >= 0 && p2 < n;
    const double d = delta;
    if (have2) {
      w[p2] += d * d * d / (24.0 * h * h);
      w[p1] += -d * d * d * (d + 4.0 * h) / (12.0 * h * h * (d + h));
      w[a] += d * d * d / (24.0 * h * h) + d * d / (4.0 * h) + 0.5 * d;
    } else if (p1 >= 0 && p1 < n) {
      w[p1] += -d * d * d / (6.0 * h * (h + d));
      w[a] += d * (3.0 * h + d) / (6.0 * h);
    } else {
      w[a] += 0.5 * d;
    }
  };

  if (last_neg >= 0) {
    auto& wn = ws.ax_wneg[axis];
    if (first_pos >= n && last_neg == n - 1) {
      // whole box is negative: the half integral is the full trapezoid
      for (int i = 0; i < n; ++i) wn[i] = ws.ax_w[axis][i];
    } else if (last_neg >= 8) {
      simpson_block(wn, 0, last_neg, true);
      cut_cell(wn, last_neg, -un[last_neg], 1);
    } else {
      for (int i = 0; i <= last_neg; ++i) wn[i] = ws.ax_w[axis][i];
      wn[last_neg] = (last_neg > 0 ? 0.5 * h : 0.0) + 0.5 * (-un[last_neg]);
    }
  }
  if (first_pos < n) {
    auto& wp = ws.ax_wpos[axis];
    if (last_neg < 0 && un[0] > 0.0) {
      for (int i = 0; i < n; ++i) wp[i] = ws.ax_w[axis][i];
    } else if (n - 1 - first_pos >= 8) {
      simpson_block(wp, first_pos, n - 1 - first_pos, false);
      cut_cell(wp, first_pos, un[first_pos], -1);
    } else {
      for (int i = first_pos; i < n; ++i) wp[i] = ws.ax_w[axis][i];
      wp[first_pos] = (first_pos < n - 1 ? 0.5 * h : 0.0) + 0.5 * un[first_pos];
    }
  }
  // a node exactly at u = 0 carries no momentum weight on either side
}

BoundsSet finalize(const State& blo, const State& bhi) {
  for (int c = 0; c < 4; ++c) {
    const double a = blo.comp(c, 2), b = bhi.comp(c, 2);
    if (!std::isfinite(a) || !std::isfinite(b))
      throw numerical_error("integrate_bounds: non-finite bound");
  }
  return {blo, bhi};
}

}  // namespace

BoundsSet integrate_bounds(std::span<const State> stencil, const KineticConfig& cfg,
                           const GasModel& gas, BoundsWorkspace& ws) {
  if (stencil.empty()) throw admissibility_error("integrate_bounds: empty stencil");
  collect_members(stencil, gas, ws);
  const VelocityGrid grid = make_velocity_grid(stencil, cfg, gas);
  const double delta_half = 0.5 * gas.delta();
  const std::size_t nm = ws.m_rho.size();

  const double rlo = 1.0 - cfg.r_fac;
  const double rhi = 1.0 + cfg.r_fac;

  State blo, bhi;
  if (gas.d == 1) {
    const int n = grid.n[0];
    fill_axis(ws, grid, 0);
    ws.zbuf.resize(n);
    ws.ebufx.resize(n);
    ws.gmin.resize(n);
    ws.gmax.resize(n);
    ws.hmin.resize(n);
    ws.hmax.resize(n);
    const double* un = ws.ax_nodes[0].data();
    const double* q = ws.ax_q[0].data();
    for (std::size_t m = 0; m < nm; ++m) {
      const double U = ws.m_ux[m];
      const double inv2t = 1.0 / (2.0 * ws.m_theta[m]);
      const double norm = ws.m_rho[m] / std::sqrt(two_pi * ws.m_theta[m]);
      const double ci = ws.m_theta[m] * delta_half;
      double* z = ws.zbuf.data();
      for (int i = 0; i < n; ++i) {
        const double t = un[i] - U;
        z[i] = -(t * t) * inv2t;
      }
      exp_neg_batch(z, ws.ebufx.data(), n);
      const double* e = ws.ebufx.data();
      if (m == 0) {
        for (int i = 0; i < n; ++i) {
          const double g = norm * e[i];
          const double h = g * (q[i] + ci);
          ws.gmin[i] = g;
          ws.gmax[i] = g;
          ws.hmin[i] = h;
          ws.hmax[i] = h;
        }
      } else {
        for (int i = 0; i < n; ++i) {
          const double g = norm * e[i];
          const double h = g * (q[i] + ci);
          ws.gmin[i] = std::min(ws.gmin[i], g);
          ws.gmax[i] = std::max(ws.gmax[i], g);
          ws.hmin[i] = std::min(ws.hmin[i], h);
          ws.hmax[i] = std::max(ws.hmax[i], h);
        }
      }
    }
    // Weighted sums, pairwise along the axis. Nodes at u = 0 fall in the
    // u >= 0 branch of the momentum sign split (integrand is zero there).
    for (auto& a : ws.acc) a.resize(n);
    const double* W = ws.ax_w[0].data();
    // m_min integrates f_max over u < 0 and f_min over u >= 0; m_max swaps
    // the roles (both relaxed toward the wider side).
    const double* Wn = ws.ax_wneg[0].data();
    const double* Wp = ws.ax_wpos[0].data();
    for (int i = 0; i < n; ++i) {
      const long double w = W[i];
      ws.acc[0][i] = w * ws.gmin[i];
      ws.acc[1][i] = w * ws.gmax[i];
      ws.acc[2][i] = w * ws.hmin[i];
      ws.acc[3][i] = w * ws.hmax[i];
      const long double glo = rlo * ws.gmin[i];
      const long double ghi = rhi * ws.gmax[i];
      ws.acc[4][i] = un[i] * (Wn[i] * ghi + Wp[i] * glo);
      ws.acc[5][i] = un[i] * (Wn[i] * glo + Wp[i] * ghi);
    }
    blo.rho = static_cast<double>(rlo * pairwise_sum(ws.acc[0]));
    bhi.rho = static_cast<double>(rhi * pairwise_sum(ws.acc[1]));
    blo.E = static_cast<double>(rlo * pairwise_sum(ws.acc[2]));
    bhi.E = static_cast<double>(rhi * pairwise_sum(ws.acc[3]));
    blo.mx = static_cast<double>(pairwise_sum(ws.acc[4]));
    bhi.mx = static_cast<double>(pairwise_sum(ws.acc[5]));
    blo.my = 0.0;
    bhi.my = 0.0;
    return finalize(blo, bhi);
  }

  // d == 2: separable Gaussians per member, tensor envelope, row sums in
  // long double then pairwise over rows.
  const int nx = grid.n[0], ny = grid.n[1];
  fill_axis(ws, grid, 0);
  fill_axis(ws, grid, 1);
  const int nn = nx * ny;
  ws.zbuf.resize(std::max(nx, ny));
  ws.ebufx.resize(nx);
  ws.ebufy.resize(ny);
  ws.gmin.resize(nn);
  ws.gmax.resize(nn);
  ws.hmin.resize(nn);
  ws.hmax.resize(nn);
  const double* uxn = ws.ax_nodes[0].data();
  const double* uyn = ws.ax_nodes[1].data();
  const double* qx = ws.ax_q[0].data();
  const double* qy = ws.ax_q[1].data();
  for (std::size_t m = 0; m < nm; ++m) {
    const double inv2t = 1.0 / (2.0 * ws.m_theta[m]);
    const double norm = ws.m_rho[m] / (two_pi * ws.m_theta[m]);
    const double ci = ws.m_theta[m] * delta_half;
    double* z = ws.zbuf.data();
    for (int i = 0; i < nx; ++i) {
      const double t = uxn[i] - ws.m_ux[m];
      z[i] = -(t * t) * inv2t;
    }
    exp_neg_batch(z, ws.ebufx.data(), nx);
    for (int j = 0; j < ny; ++j) {
      const double t = uyn[j] - ws.m_uy[m];
      z[j] = -(t * t) * inv2t;
    }
    exp_neg_batch(z, ws.ebufy.data(), ny);
    const double* ex = ws.ebufx.data();
    const double* ey = ws.ebufy.data();
    if (m == 0) {
      for (int i = 0; i < nx; ++i) {
        const double gx = norm * ex[i];
        const double qxi = qx[i];
        double* gm = ws.gmin.data() + i * ny;
        double* gM = ws.gmax.data() + i * ny;
        double* hm = ws.hmin.data() + i * ny;
        double* hM = ws.hmax.data() + i * ny;
        for (int j = 0; j < ny; ++j) {
          const double g = gx * ey[j];
          const double h = g * (qxi + qy[j] + ci);
          gm[j] = g;
          gM[j] = g;
          hm[j] = h;
          hM[j] = h;
        }
      }
    } else {
      for (int i = 0; i < nx; ++i) {
        const double gx = norm * ex[i];
        const double qxi = qx[i];
        double* gm = ws.gmin.data() + i * ny;
        double* gM = ws.gmax.data() + i * ny;
        double* hm = ws.hmin.data() + i * ny;
        double* hM = ws.hmax.data() + i * ny;
        for (int j = 0; j < ny; ++j) {
          const double g = gx * ey[j];
          const double h = g * (qxi + qy[j] + ci);
          gm[j] = std::min(gm[j], g);
          gM[j] = std::max(gM[j], g);
          hm[j] = std::min(hm[j], h);
          hM[j] = std::max(hM[j], h);
        }
      }
    }
  }

  for (auto& a : ws.acc) a.resize(nx);
  const double* Wx = ws.ax_w[0].data();
  const double* Wy = ws.ax_w[1].data();
  const double* Wnx = ws.ax_wneg[0].data();
  const double* Wny = ws.ax_wneg[1].data();
  const double* Wpx = ws.ax_wpos[0].data();
  const double* Wpy = ws.ax_wpos[1].data();
  for (int i = 0; i < nx; ++i) {
    const double* gm = ws.gmin.data() + i * ny;
    const double* gM = ws.gmax.data() + i * ny;
    const double* hm = ws.hmin.data() + i * ny;
    const double* hM = ws.hmax.data() + i * ny;
    long double rmin = 0.0L, rmax = 0.0L, emin = 0.0L, emax = 0.0L;
    long double mymin = 0.0L, mymax = 0.0L;
    for (int j = 0; j < ny; ++j) {
      const long double w = Wy[j];
      const long double glo = rlo * gm[j], ghi = rhi * gM[j];
      rmin += w * gm[j];
      rmax += w * gM[j];
      emin += w * hm[j];
      emax += w * hM[j];
      mymin += uyn[j] * (Wny[j] * ghi + Wpy[j] * glo);
      mymax += uyn[j] * (Wny[j] * glo + Wpy[j] * ghi);
    }
    const long double wx = Wx[i];
    ws.acc[0][i] = wx * rmin;
    ws.acc[1][i] = wx * rmax;
    ws.acc[2][i] = wx * emin;
    ws.acc[3][i] = wx * emax;
    // x-momentum: the y-trapezoid row sums of f_min/f_max enter the
    // half-domain rules along x
    ws.acc[4][i] = uxn[i] * (Wnx[i] * (rhi * rmax) + Wpx[i] * (rlo * rmin));
    ws.acc[5][i] = uxn[i] * (Wnx[i] * (rlo * rmin) + Wpx[i] * (rhi * rmax));
    ws.acc[6][i] = wx * mymin;
    ws.acc[7][i] = wx * mymax;
  }
  blo.rho = static_cast<double>(rlo * pairwise_sum(ws.acc[0]));
  bhi.rho = static_cast<double>(rhi * pairwise_sum(ws.acc[1]));
  blo.E = static_cast<double>(rlo * pairwise_sum(ws.acc[2]));
  bhi.E = static_cast<double>(rhi * pairwise_sum(ws.acc[3]));
  blo.mx = static_cast<double>(pairwise_sum(ws.acc[4]));
  bhi.mx = static_cast<double>(pairwise_sum(ws.acc[5]));
  blo.my = static_cast<double>(pairwise_sum(ws.acc[6]));
  bhi.my = static_cast<double>(pairwise_sum(ws.acc[7]));
  return finalize(blo, bhi);
}

BoundsSet integrate_bounds(std::span<const State> stencil, const KineticConfig& cfg,
                           const GasModel& gas) {
  BoundsWorkspace ws;
  return integrate_bounds(stencil, cfg, gas, ws);
}

}  // namespace kldg
