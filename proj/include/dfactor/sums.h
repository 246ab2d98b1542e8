#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfactor/apoints.h"
#include "dfactor/lfun.h"

namespace dfactor {

/// sum over the set of x^delta, x > 0, x != 1.
cplx landau_sum(const APointSet& points, double x);

/// y(T) for the Landau main term: the override if given, else psi(T)
/// clamped below at 2. Throws ThetaRangeError when y > T/|4 Theta|.
double landau_y(const DerivedInvariants& inv, double T, std::optional<double> y_override = {});

/// x^(1/2) M(x, T, T') / (2 pi i |log x|) with
/// M = x^(iT') ell(T') - x^(iT) ell(T). Requires t0 <= T,
/// T + 1/log T <= T' <= 2T and max(x, 1/x) <= (1 - 1/y) lamQ2 T^d.
cplx landau_main_term(const DerivedInvariants& inv, double x, double T, double T_prime,
                      std::optional<double> y_override = {});

/// x^(1/2) (psi(T) + y |log x| + 1/|log x|).
double landau_error_budget(double x, double T, double y);

struct LandauReport {
  double x = 0.0;
  double T = 0.0;
  double T_prime = 0.0;
  double y = 0.0;
  cplx empirical_sum{};
  cplx main_term{};
  double error_budget = 0.0;

  double deviation() const { return std::abs(empirical_sum - main_term); }
};

/// points must be complete on (T, T'].
LandauReport landau_report(const APointSet& points, const DerivedInvariants& inv, double x,
                           double T, double T_prime, std::optional<double> y_override = {});

/// sum exp(2 pi i k alpha gamma); k = 0 and alpha = 0 are rejected.
cplx weyl_sum(const APointSet& points, double alpha, long k);

/// Star discrepancy of the fractional parts of values.
double star_discrepancy(std::span<const double> values);

struct EquidistReport {
  double alpha = 0.0;
  std::size_t N = 0;
  std::vector<double> weyl_magnitudes;  // index k = 0..k_max, entry 0 is N
  double star_discrepancy = 0.0;
};

EquidistReport equidist_report(const APointSet& points, double alpha, long k_max);

/// sum of L(delta) over the set.
cplx mean_value_sum(const LFunction& L, const APointSet& points);

/// (f(1) + a conj f(1)) N_plus.
cplx mean_value_prediction(const LFunction& L, cplx a, double N_plus);

}  // namespace dfactor
