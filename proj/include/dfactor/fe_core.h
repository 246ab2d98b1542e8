#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfactor/numeric.h"

namespace dfactor {

/// One Gamma factor Gamma(lambda*s + mu) of the completed function.
struct GammaFactor {
  double lambda = 0.0;
  cplx mu{};
  bool operator==(const GammaFactor&) const = default;
};

/// Functional-equation data (Q, omega, {(lambda_j, mu_j)}) of a Riemann-type
/// functional equation. The datum is taken as given; two data describing the
/// same function are not identified.
///
/// Construction validates: Q > 0, lambda_j > 0, Re mu_j >= 0,
/// ||omega| - 1| <= 1e-12, at least one factor and degree >= 1.
class FunctionalEquationDatum {
 public:
  FunctionalEquationDatum(std::string name, double Q, cplx omega,
                          std::vector<GammaFactor> gamma_factors);

  const std::string& name() const { return name_; }
  double Q() const { return Q_; }
  cplx omega() const { return omega_; }
  std::span<const GammaFactor> gamma_factors() const { return gamma_factors_; }
  double degree() const;

  bool operator==(const FunctionalEquationDatum&) const = default;

 private:
  std::string name_;
  double Q_;
  cplx omega_;
  std::vector<GammaFactor> gamma_factors_;
};

inline constexpr double kOmegaUnitTolerance = 1e-12;

struct DerivedInvariants {
  double d = 0.0;       // degree 2*sum(lambda_j)
  double lam = 0.0;     // prod lambda_j^(2 lambda_j)
  double lamQ2 = 0.0;   // lam * Q^2
  double eta = 0.0;     // Re xi, xi = 2*sum(mu_j - 1/2)
  double theta = 0.0;   // Im xi
  cplx omega_star{};    // unit-modulus constant of the Stirling asymptotic
  double t0 = 0.0;      // lower height at which asymptotics are trusted
};

/// Calibration of t0: the first t = 10 * 1.25^k at which the asymptotic
/// Delta agrees with the exact one to kT0RelativeTolerance on sigma = 1/2 and
/// ell(t) >= kT0MinEll. `t0_override`, when given, replaces the scan.
inline constexpr double kT0RelativeTolerance = 0.1;
inline constexpr double kT0MinEll = 1.0;
inline constexpr double kT0Start = 10.0;
inline constexpr double kT0Factor = 1.25;
inline constexpr int kT0MaxSteps = 80;

DerivedInvariants derive_invariants(const FunctionalEquationDatum& datum,
                                    std::optional<double> t0_override = {});

/// log(lamQ2 * |t|^d). Throws DomainError at t == 0.
double ell(const DerivedInvariants& inv, double t);

/// log t / log log t for t >= 3.
double psi(double t);

/// Datum of the conjugate function: mu_j -> conj(mu_j), omega -> conj(omega).
FunctionalEquationDatum conjugate_datum(const FunctionalEquationDatum& datum);

/// Datum of a product of functions: union of Gamma factors, product of Q and
/// omega.
FunctionalEquationDatum product_datum(std::string name,
                                      std::span<const FunctionalEquationDatum> factors,
                                      std::span<const int> exponents);

}  // namespace dfactor
