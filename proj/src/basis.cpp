#include "kldg/basis.hpp"

#include <cmath>

namespace kldg {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw config_error("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : p1;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

Basis::Basis(int degree) : p(degree) {
  if (degree < 0) throw config_error("Basis: degree must be >= 0");
  const int m = p + 1;
  gauss_legendre(m, nodes, weights);

  // Barycentric weights.
  std::vector<double> bw(m, 1.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (j != i) bw[i] /= (nodes[i] - nodes[j]);

  diff.assign(m * m, 0.0);
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const double dij = (bw[j] / bw[i]) / (nodes[i] - nodes[j]);
      diff[i * m + j] = dij;
      row += dij;
    }
    diff[i * m + i] = -row;  // exact row sum zero
  }

  auto lagrange_at = [&](double x) {
    std::vector<double> l(m);
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      l[j] = bw[j] / (x - nodes[j]);
      sum += l[j];
    }
    for (int j = 0; j < m; ++j) l[j] /= sum;  // constants interpolate exactly
    return l;
  };
  interp_lo = lagrange_at(-1.0);
  interp_hi = lagrange_at(1.0);
}

}  // namespace kldg
