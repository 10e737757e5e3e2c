#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kldg/numeric.hpp"

using namespace kldg;

TEST_CASE("exp_neg matches std::exp to a few ulp") {
  std::mt19937_64 eng(1);
  std::uniform_real_distribution<double> dist(-60.0, 0.0);
  double worst = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double x = dist(eng);
    const double a = exp_neg(x);
    const double b = std::exp(x);
    worst = std::max(worst, std::abs(a - b) / b);
  }
  CHECK(worst < 5e-16);
}

TEST_CASE("exp_neg deep underflow and edge cases") {
  CHECK(exp_neg(0.0) == 1.0);
  CHECK(exp_neg(-800.0) == 0.0);
  CHECK(exp_neg(-1e9) == 0.0);
  // around the subnormal threshold the result must stay finite and ordered
  double prev = exp_neg(-700.0);
  for (double x = -701.0; x > -760.0; x -= 1.0) {
    const double v = exp_neg(x);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
  // moderately deep values still accurate
  CHECK(std::abs(exp_neg(-700.0) - std::exp(-700.0)) <= 1e-15 * std::exp(-700.0));
}

TEST_CASE("pairwise_sum sums exactly representable sequences exactly") {
  std::vector<long double> v;
  for (int i = 1; i <= 4096; ++i) v.push_back(static_cast<long double>(i));
  CHECK(pairwise_sum(v) == 4096.0L * 4097.0L / 2.0L);
  v.clear();
  for (int i = 0; i < 2000; ++i) v.push_back(i % 2 == 0 ? 1.0L : -1.0L);
  CHECK(pairwise_sum(v) == 0.0L);
}
