#include "dfactor/fe_core.h"

#include <cmath>
#include <fmt/format.h>

#include "dfactor/errors.h"
#include "dfactor/special_fn.h"

namespace dfactor {

FunctionalEquationDatum::FunctionalEquationDatum(std::string name, double Q, cplx omega,
                                                 std::vector<GammaFactor> gamma_factors)
    : name_(std::move(name)), Q_(Q), omega_(omega), gamma_factors_(std::move(gamma_factors)) {
  if (!(Q_ > 0.0) || !std::isfinite(Q_)) {
    throw InvalidDatum(fmt::format("datum '{}': Q must be positive, got {}", name_, Q_));
  }
  if (!(std::abs(std::abs(omega_) - 1.0) <= kOmegaUnitTolerance)) {
    throw InvalidDatum(fmt::format("datum '{}': omega must have unit modulus, |omega| = {:.17g}",
                                   name_, std::abs(omega_)));
  }
  if (gamma_factors_.empty()) {
    throw InvalidDatum(fmt::format("datum '{}': gamma_factors must be nonempty", name_));
  }
  for (std::size_t j = 0; j < gamma_factors_.size(); ++j) {
    const auto& g = gamma_factors_[j];
    if (!(g.lambda > 0.0) || !std::isfinite(g.lambda)) {
      throw InvalidDatum(fmt::format("datum '{}': gamma_factors[{}].lambda must be positive, got {}",
                                     name_, j, g.lambda));
    }
    if (!(g.mu.real() >= 0.0) || !std::isfinite(g.mu.imag())) {
      throw InvalidDatum(fmt::format("datum '{}': gamma_factors[{}].mu must have Re mu >= 0, got {}",
                                     name_, j, g.mu.real()));
    }
  }
  const double d = degree();
  if (d < 1.0 - 1e-12) {
    throw InvalidDatum(fmt::format("datum '{}': degree d = {} < 1 (gamma_factors.lambda)", name_, d));
  }
}

double FunctionalEquationDatum::degree() const {
  double d = 0.0;
  for (const auto& g : gamma_factors_) d += 2.0 * g.lambda;
  return d;
}

namespace {

double calibrate_t0(const FunctionalEquationDatum& datum, const DerivedInvariants& inv) {
  double t = kT0Start;
  for (int k = 0; k < kT0MaxSteps; ++k, t *= kT0Factor) {
    const double l = std::log(inv.lamQ2) + inv.d * std::log(t);
    if (l - std::abs(inv.theta) / t < kT0MinEll) continue;
    const ComplexPoint s{0.5, t};
    const cplx exact = delta_exact(datum, s).value();
    const cplx asym = detail::delta_asymptotic_unchecked(inv, s);
    if (std::abs(exact - asym) <= kT0RelativeTolerance * std::abs(exact)) return t;
  }
  throw DomainError(fmt::format("datum '{}': t0 calibration did not settle below {}",
                                datum.name(), t));
}

}  // namespace

DerivedInvariants derive_invariants(const FunctionalEquationDatum& datum,
                                    std::optional<double> t0_override) {
  DerivedInvariants inv;
  double log_lam = 0.0;
  cplx xi{};
  double log_lam_imag = 0.0;  // sum Im(mu_j) * log(lambda_j)
  for (const auto& g : datum.gamma_factors()) {
    inv.d += 2.0 * g.lambda;
    log_lam += 2.0 * g.lambda * std::log(g.lambda);
    xi += 2.0 * (g.mu - 0.5);
    log_lam_imag += g.mu.imag() * std::log(g.lambda);
  }
  inv.lam = std::exp(log_lam);
  inv.lamQ2 = std::exp(log_lam + 2.0 * std::log(datum.Q()));
  inv.eta = xi.real();
  inv.theta = xi.imag();
  const double phase = -0.25 * kPi * (inv.d + 2.0 * inv.eta) - 2.0 * log_lam_imag;
  inv.omega_star = datum.omega() * std::polar(1.0, reduce_phase(phase));

  if (t0_override) {
    if (!(*t0_override > 0.0)) {
      throw InvalidDatum(fmt::format("datum '{}': t0 override must be positive", datum.name()));
    }
    inv.t0 = *t0_override;
  } else {
    inv.t0 = calibrate_t0(datum, inv);
  }
  return inv;
}

double ell(const DerivedInvariants& inv, double t) {
  if (t == 0.0) throw DomainError("ell(t) is undefined at t = 0");
  return std::log(inv.lamQ2) + inv.d * std::log(std::abs(t));
}

double psi(double t) {
  if (!(t >= 3.0)) throw DomainError(fmt::format("psi(t) requires t >= 3, got {}", t));
  const double lt = std::log(t);
  return lt / std::log(lt);
}

FunctionalEquationDatum conjugate_datum(const FunctionalEquationDatum& datum) {
  std::vector<GammaFactor> factors(datum.gamma_factors().begin(), datum.gamma_factors().end());
  for (auto& g : factors) g.mu = std::conj(g.mu);
  return FunctionalEquationDatum(datum.name(), datum.Q(), std::conj(datum.omega()),
                                 std::move(factors));
}

FunctionalEquationDatum product_datum(std::string name,
                                      std::span<const FunctionalEquationDatum> factors,
                                      std::span<const int> exponents) {
  if (factors.size() != exponents.size() || factors.empty()) {
    throw InvalidDatum("product datum needs one positive exponent per factor");
  }
  double log_Q = 0.0;
  double omega_phase = 0.0;
  std::vector<GammaFactor> gammas;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (exponents[i] < 1) throw InvalidDatum("product datum exponents must be positive");
    for (int e = 0; e < exponents[i]; ++e) {
      log_Q += std::log(factors[i].Q());
      omega_phase += std::arg(factors[i].omega());
      gammas.insert(gammas.end(), factors[i].gamma_factors().begin(),
                    factors[i].gamma_factors().end());
    }
  }
  return FunctionalEquationDatum(std::move(name), std::exp(log_Q),
                                 std::polar(1.0, reduce_phase(omega_phase)), std::move(gammas));
}

}  // namespace dfactor
