#pragma once

#include <random>

#include "dfactor/fe_core.h"
#include "dfactor/lfun.h"

namespace testing {

using dfactor::cplx;

inline dfactor::FunctionalEquationDatum zeta_datum() { return dfactor::catalog_get("zeta").datum(); }
inline dfactor::FunctionalEquationDatum theta_datum() {
  return dfactor::catalog_get("synthetic-theta").datum();
}

// Seeded generator for the property tests; every test owns its own stream.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  // Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  cplx unit() { return std::polar(1.0, uniform(-dfactor::kPi, dfactor::kPi)); }

  // A valid datum with 1..3 factors and degree >= 1.
  dfactor::FunctionalEquationDatum datum() {
    const int r = integer(1, 3);
    std::vector<dfactor::GammaFactor> g;
    double lambda_sum = 0.0;
    for (int j = 0; j < r; ++j) {
      const double lam = uniform(0.25, 1.5);
      lambda_sum += lam;
      g.push_back({lam, cplx(uniform(0.0, 1.5), uniform(-2.0, 2.0))});
    }
    if (2.0 * lambda_sum < 1.0) g.front().lambda += 0.5;
    return dfactor::FunctionalEquationDatum("random", uniform(0.2, 3.0), unit(), std::move(g));
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

}  // namespace testing
