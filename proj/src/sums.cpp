#include "dfactor/sums.h"

#include <algorithm>
#include <fmt/format.h>

#include "dfactor/errors.h"

namespace dfactor {

namespace {

void check_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(fmt::format("x = {} must be positive", x));
  if (x == 1.0) throw XOneError("x = 1 is excluded");
}

double frac(double v) { return v - std::floor(v); }

}  // namespace

cplx landau_sum(const APointSet& points, double x) {
  check_x(x);
  const double lx = std::log(x);
  CompensatedSum sum;
  for (const auto& p : points.points) sum += exp_reduced(p.value() * lx);
  return sum.value();
}

double landau_y(const DerivedInvariants& inv, double T, std::optional<double> y_override) {
  const double y = y_override ? *y_override : std::max(2.0, psi(T));
  if (y < 2.0) throw RangeError(fmt::format("y = {} is below 2", y));
  if (inv.theta != 0.0 && y > T / std::abs(4.0 * inv.theta)) {
    throw ThetaRangeError(fmt::format("y = {} exceeds T/|4 Theta| = {}", y,
                                      T / std::abs(4.0 * inv.theta)));
  }
  return y;
}

cplx landau_main_term(const DerivedInvariants& inv, double x, double T, double T_prime,
                      std::optional<double> y_override) {
  check_x(x);
  if (T < inv.t0) throw RangeError(fmt::format("T = {} is below t0 = {}", T, inv.t0));
  if (T_prime < T + 1.0 / std::log(T) || T_prime > 2.0 * T) {
    throw RangeError(fmt::format("T' = {} outside [T + 1/log T, 2T] for T = {}", T_prime, T));
  }
  const double y = landau_y(inv, T, y_override);
  const double bound = (1.0 - 1.0 / y) * inv.lamQ2 * std::pow(T, inv.d);
  if (std::max(x, 1.0 / x) > bound) {
    throw RangeError(fmt::format("max(x, 1/x) = {} exceeds the length bound {}",
                                 std::max(x, 1.0 / x), bound));
  }
  const double lx = std::log(x);
  const cplx M = std::polar(ell(inv, T_prime), reduce_phase(T_prime * lx)) -
                 std::polar(ell(inv, T), reduce_phase(T * lx));
  return std::sqrt(x) * M / cplx(0.0, kTwoPi * std::abs(lx));
}

double landau_error_budget(double x, double T, double y) {
  const double alx = std::abs(std::log(x));
  return std::sqrt(x) * (psi(T) + y * alx + 1.0 / alx);
}

LandauReport landau_report(const APointSet& points, const DerivedInvariants& inv, double x,
                           double T, double T_prime, std::optional<double> y_override) {
  LandauReport r;
  r.x = x;
  r.T = T;
  r.T_prime = T_prime;
  r.main_term = landau_main_term(inv, x, T, T_prime, y_override);
  r.y = landau_y(inv, T, y_override);
  r.empirical_sum = landau_sum(points, x);
  r.error_budget = landau_error_budget(x, T, r.y);
  return r;
}

cplx weyl_sum(const APointSet& points, double alpha, long k) {
  if (k == 0) throw DomainError("Weyl sum index k must be nonzero");
  if (alpha == 0.0) throw DomainError("alpha must be nonzero");
  CompensatedSum sum;
  for (const auto& p : points.points) {
    // Reduce alpha*gamma mod 1 before scaling so large k keeps precision.
    const double u = frac(alpha * p.gamma);
    sum += std::polar(1.0, kTwoPi * frac(double(k) * u));
  }
  return sum.value();
}

double star_discrepancy(std::span<const double> values) {
  if (values.empty()) throw EmptyInput("star discrepancy of an empty sequence");
  std::vector<double> u(values.size());
  std::transform(values.begin(), values.end(), u.begin(), frac);
  std::sort(u.begin(), u.end());
  const double N = double(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max({d, double(i + 1) / N - u[i], u[i] - double(i) / N});
  }
  return d;
}

EquidistReport equidist_report(const APointSet& points, double alpha, long k_max) {
  if (k_max < 0) throw DomainError("k_max must be nonnegative");
  EquidistReport r;
  r.alpha = alpha;
  r.N = points.size();
  r.weyl_magnitudes.push_back(double(r.N));
  for (long k = 1; k <= k_max; ++k) r.weyl_magnitudes.push_back(std::abs(weyl_sum(points, alpha, k)));
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto& p : points.points) values.push_back(alpha * p.gamma);
  r.star_discrepancy = star_discrepancy(values);
  return r;
}

cplx mean_value_sum(const LFunction& L, const APointSet& points) {
  if (!L.has_coefficients()) L.leading();  // throws CoefficientsUnavailable
  CompensatedSum sum;
  for (const auto& p : points.points) sum += L.evaluate(ComplexPoint(p.value()));
  return sum.value();
}

cplx mean_value_prediction(const LFunction& L, cplx a, double N_plus) {
  if (!(N_plus >= 0.0)) throw DomainError("N_plus must be nonnegative");
  const cplx f1 = L.leading();
  return (f1 + a * std::conj(f1)) * N_plus;
}

}  // namespace dfactor
