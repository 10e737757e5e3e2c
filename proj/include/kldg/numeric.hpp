#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace kldg {

/// Pairwise (cascade) summation in extended precision. Deterministic for a
/// fixed input order and immune to the worst cancellation growth of naive
/// left-to-right sums.
inline long double pairwise_sum(std::span<const long double> v) {
  const std::size_t n = v.size();
  if (n <= 16) {
    long double s = 0.0L;
    for (const long double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline long double pairwise_sum(const std::vector<long double>& v) {
  return pairwise_sum(std::span<const long double>(v.data(), v.size()));
}

/// exp(x) for x <= 0, accurate to a few ulp. Plain arithmetic only so that
/// the compiler can vectorize batched callers; underflows to exactly 0.
inline double exp_neg(double x) {
  // exp(x) = 2^k * exp(r), r = x - k ln2, |r| <= ln2/2.
  constexpr double inv_ln2 = 1.4426950408889634074;
  constexpr double ln2_hi = 6.93147180369123816490e-01;
  constexpr double ln2_lo = 1.90821492927058770002e-10;
  if (x < -745.0) return 0.0;
  const double kd = std::nearbyint(x * inv_ln2);
  const double r = (x - kd * ln2_hi) - kd * ln2_lo;
  // Degree-13 Taylor polynomial of exp on [-ln2/2, ln2/2]; remainder ~1e-17.
  constexpr double c2 = 1.0 / 2;
  constexpr double c3 = 1.0 / 6;
  constexpr double c4 = 1.0 / 24;
  constexpr double c5 = 1.0 / 120;
  constexpr double c6 = 1.0 / 720;
  constexpr double c7 = 1.0 / 5040;
  constexpr double c8 = 1.0 / 40320;
  constexpr double c9 = 1.0 / 362880;
  constexpr double c10 = 1.0 / 3628800;
  constexpr double c11 = 1.0 / 39916800;
  constexpr double c12 = 1.0 / 479001600;
  constexpr double c13 = 1.0 / 6227020800.0;
  double p = c13;
  p = p * r + c12;
  p = p * r + c11;
  p = p * r + c10;
  p = p * r + c9;
  p = p * r + c8;
  p = p * r + c7;
  p = p * r + c6;
  p = p * r + c5;
  p = p * r + c4;
  p = p * r + c3;
  p = p * r + c2;
  p = p * r + 1.0;
  p = p * r + 1.0;
  // Scale by 2^k through the exponent bits; k in [-1075, 1] here.
  const std::int64_t k = static_cast<std::int64_t>(kd);
  if (k <= -1022) {
    // Subnormal range: split the scaling to stay in normal arithmetic.
    const double half = std::bit_cast<double>((static_cast<std::int64_t>(-511) + 1023) << 52);
    const std::int64_t k2 = k + 511;
    if (k2 <= -1022) return 0.0;
    const double s2 = std::bit_cast<double>((k2 + 1023) << 52);
    return p * half * s2;
  }
  const double scale = std::bit_cast<double>((k + 1023) << 52);
  return p * scale;
}

/// out[i] = exp(x[i]) for non-positive inputs.
inline void exp_neg_batch(const double* x, double* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = exp_neg(x[i]);
}

}  // namespace kldg
