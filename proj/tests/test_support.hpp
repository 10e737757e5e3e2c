#pragma once

#include <cmath>
#include <random>

#include "kldg/euler.hpp"

namespace kldg::test {

inline bool close(double a, double b, double rtol = 1e-12, double atol = 0.0) {
  return std::abs(a - b) <= atol + rtol * std::max(std::abs(a), std::abs(b));
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed = 42) : eng(seed) {}
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(eng);
  }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

  State state(const GasModel& gas, double rho_lo = 0.1, double rho_hi = 10.0) {
    Prim q;
    q.rho = log_uniform(rho_lo, rho_hi);
    q.ux = uniform(-2.0, 2.0);
    q.uy = gas.d == 2 ? uniform(-2.0, 2.0) : 0.0;
    q.P = log_uniform(0.05, 5.0);
    return prim_to_cons(q, gas);
  }
};

}  // namespace kldg::test
