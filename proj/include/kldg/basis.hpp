#pragma once

#include <vector>

#include "kldg/errors.hpp"

namespace kldg {

/// Nodal basis on the reference interval [-1, 1]: Gauss-Legendre points,
/// quadrature weights, differentiation matrix, and interpolation vectors to
/// the faces x = -1 and x = +1. Diagonal entries of the differentiation
/// matrix are the exact negation of their off-diagonal row sums and the face
/// vectors are normalized to unit sum.
struct Basis {
  int p = 0;
  std::vector<double> nodes;      // p+1 Gauss-Legendre points
  std::vector<double> weights;    // matching quadrature weights (sum = 2)
  std::vector<double> diff;       // (p+1)x(p+1) row-major nodal derivative
  std::vector<double> interp_lo;  // Lagrange values at x = -1
  std::vector<double> interp_hi;  // Lagrange values at x = +1

  explicit Basis(int degree);

  int n() const { return p + 1; }
  double d(int i, int j) const { return diff[i * (p + 1) + j]; }
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace kldg
