#include "dfactor/special_fn.h"

#include <array>
#include <cmath>
#include <fmt/format.h>

#include "dfactor/errors.h"

namespace dfactor {

namespace {

// B_2, B_4, ..., B_16
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,     -1.0 / 30.0, 1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,    -691.0 / 2730.0, 7.0 / 6.0,   -3617.0 / 510.0,
};

constexpr double kStirlingRadius = 20.0;
constexpr double kHalfLogTwoPi = 0.91893853320467274178;
constexpr double kMinRecursionReal = -1e5;

bool is_gamma_pole(cplx z) {
  const double scale = std::max(1.0, std::abs(z.real()));
  if (std::abs(z.imag()) > 1e-14 * scale) return false;
  if (z.real() > 0.5) return false;
  return std::abs(z.real() - std::nearbyint(z.real())) <= 1e-14 * scale;
}

int recursion_depth(cplx z) {
  if (z.real() < kMinRecursionReal) {
    throw DomainError(fmt::format("Gamma argument {}{:+}i too far left", z.real(), z.imag()));
  }
  int n = 0;
  while (std::abs(z + double(n)) < kStirlingRadius || z.real() + n < 0.0) ++n;
  return n;
}

cplx stirling_log_gamma(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx corr{};
  cplx pow = inv;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double n = 2.0 * (k + 1);
    corr += kBernoulli[k] / (n * (n - 1.0)) * pow;
    pow *= inv2;
  }
  CompensatedSum sum;
  sum += (z - 0.5) * std::log(z);
  sum -= z;
  sum += kHalfLogTwoPi;
  sum += corr;
  return sum.value();
}

cplx asymptotic_digamma(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx corr{};
  cplx pow = inv2;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double n = 2.0 * (k + 1);
    corr += kBernoulli[k] / n * pow;
    pow *= inv2;
  }
  return std::log(z) - 0.5 * inv - corr;
}

}  // namespace

ComplexPoint::ComplexPoint(double sigma_, double t_) : sigma(sigma_), t(t_) {
  if (!std::isfinite(sigma) || !std::isfinite(t)) {
    throw DomainError("ComplexPoint components must be finite");
  }
}

cplx log_gamma(cplx z) {
  if (is_gamma_pole(z)) {
    throw PoleError(fmt::format("log_gamma: pole at {}", z.real()));
  }
  const int n = recursion_depth(z);
  if (n == 0) return stirling_log_gamma(z);
  CompensatedSum sum;
  sum += stirling_log_gamma(z + double(n));
  for (int k = 0; k < n; ++k) sum -= std::log(z + double(k));
  return sum.value();
}

cplx digamma(cplx z) {
  if (is_gamma_pole(z)) {
    throw PoleError(fmt::format("digamma: pole at {}", z.real()));
  }
  const int n = recursion_depth(z);
  CompensatedSum sum;
  sum += asymptotic_digamma(z + double(n));
  for (int k = 0; k < n; ++k) sum -= 1.0 / (z + double(k));
  return sum.value();
}

cplx DeltaValue::value() const {
  switch (kind) {
    case Kind::Finite:
      return exp_reduced(log_value);
    case Kind::Zero:
      return {0.0, 0.0};
    case Kind::Infinite:
      break;
  }
  throw PoleError("Delta has a pole here");
}

DeltaValue delta_exact(const FunctionalEquationDatum& datum, ComplexPoint s) {
  const cplx z = s.value();
  bool numerator_pole = false;
  bool denominator_pole = false;
  for (const auto& g : datum.gamma_factors()) {
    numerator_pole |= is_gamma_pole(g.lambda * (1.0 - z) + std::conj(g.mu));
    denominator_pole |= is_gamma_pole(g.lambda * z + g.mu);
  }
  if (numerator_pole && denominator_pole) {
    throw PoleError(fmt::format("Delta undetermined at {}{:+}i (pole over pole)", s.sigma, s.t));
  }
  if (numerator_pole) return {DeltaValue::Kind::Infinite, {}};
  if (denominator_pole) return {DeltaValue::Kind::Zero, {}};

  CompensatedSum sum;
  sum += cplx(0.0, std::arg(datum.omega()));
  sum += (1.0 - 2.0 * z) * std::log(datum.Q());
  for (const auto& g : datum.gamma_factors()) {
    sum += log_gamma(g.lambda * (1.0 - z) + std::conj(g.mu));
    sum -= log_gamma(g.lambda * z + g.mu);
  }
  return {DeltaValue::Kind::Finite, sum.value()};
}

cplx log_delta(const FunctionalEquationDatum& datum, ComplexPoint s) {
  const DeltaValue v = delta_exact(datum, s);
  if (!v.finite()) {
    throw PoleError(fmt::format("log Delta undefined at {}{:+}i", s.sigma, s.t));
  }
  return v.log_value;
}

cplx delta_log_deriv_exact(const FunctionalEquationDatum& datum, ComplexPoint s) {
  const cplx z = s.value();
  CompensatedSum sum;
  sum += -2.0 * std::log(datum.Q());
  for (const auto& g : datum.gamma_factors()) {
    sum -= g.lambda * digamma(g.lambda * (1.0 - z) + std::conj(g.mu));
    sum -= g.lambda * digamma(g.lambda * z + g.mu);
  }
  return sum.value();
}

DerivedInvariants conjugate_invariants(const DerivedInvariants& inv) {
  DerivedInvariants c = inv;
  c.theta = -inv.theta;
  c.omega_star = std::conj(inv.omega_star) *
                 std::polar(1.0, reduce_phase(-0.5 * kPi * (inv.d + 2.0 * inv.eta)));
  return c;
}

namespace detail {

cplx delta_asymptotic_unchecked(const DerivedInvariants& inv, ComplexPoint s) {
  if (s.t < 0.0) {
    const DerivedInvariants c = conjugate_invariants(inv);
    return std::conj(delta_asymptotic_unchecked(c, ComplexPoint(s.sigma, -s.t)));
  }
  const double t = s.t;
  const double l = std::log(inv.lamQ2) + inv.d * std::log(t);
  const double phase = -t * l + inv.d * t - inv.theta * std::log(t) + std::arg(inv.omega_star);
  return std::polar(std::exp((0.5 - s.sigma) * l), reduce_phase(phase));
}

}  // namespace detail

namespace {

void check_asymptotic_domain(const DerivedInvariants& inv, ComplexPoint s, bool check_sigma) {
  if (std::abs(s.t) < inv.t0) {
    throw DomainError(fmt::format("asymptotic requires |t| >= t0 = {}, got t = {}", inv.t0, s.t));
  }
  if (check_sigma && (s.sigma < detail::kAsymptoticSigmaLo || s.sigma > detail::kAsymptoticSigmaHi)) {
    throw DomainError(fmt::format("asymptotic requires sigma in [-2, 3], got {}", s.sigma));
  }
}

}  // namespace

cplx delta_asymptotic(const DerivedInvariants& inv, ComplexPoint s) {
  check_asymptotic_domain(inv, s, true);
  return detail::delta_asymptotic_unchecked(inv, s);
}

double delta_asymptotic_modulus(const DerivedInvariants& inv, ComplexPoint s) {
  check_asymptotic_domain(inv, s, true);
  return std::exp((0.5 - s.sigma) * ell(inv, s.t));
}

cplx delta_log_deriv_asymptotic(const DerivedInvariants& inv, ComplexPoint s) {
  check_asymptotic_domain(inv, s, false);
  return {-ell(inv, s.t) - inv.theta / s.t, -inv.d * (0.5 - s.sigma) / s.t};
}

}  // namespace dfactor
