#pragma once

#include "dfactor/fe_core.h"
#include "dfactor/numeric.h"

namespace dfactor {

/// s = sigma + i t.
struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;

  ComplexPoint() = default;
  ComplexPoint(double sigma_, double t_);
  explicit ComplexPoint(cplx s) : ComplexPoint(s.real(), s.imag()) {}
  cplx value() const { return {sigma, t}; }
};

/// log Gamma(z), the branch continuous off the negative real axis and real on
/// the positive one (so exp(log_gamma(z)) == Gamma(z)). Upward recursion until
/// |z+n| >= 20 and Re(z+n) >= 0, then the Stirling series with Bernoulli
/// corrections through B_16. Throws PoleError at z = 0, -1, -2, ...
cplx log_gamma(cplx z);

/// Gamma'/Gamma(z) by the same recursion and the asymptotic series.
cplx digamma(cplx z);

/// Result of evaluating Delta: finite value or an exact pole/zero signal.
struct DeltaValue {
  enum class Kind { Finite, Infinite, Zero };
  Kind kind = Kind::Finite;
  cplx log_value{};  // unreduced log Delta, meaningful only when Finite

  bool finite() const { return kind == Kind::Finite; }
  /// The value itself; +inf signal throws PoleError, zero signal returns 0.
  cplx value() const;
};

/// omega Q^(1-2s) prod Gamma(lambda_j(1-s)+conj mu_j) / Gamma(lambda_j s+mu_j),
/// summed in log space with a single final exponentiation.
DeltaValue delta_exact(const FunctionalEquationDatum& datum, ComplexPoint s);

/// log Delta(s) (unreduced, continuous in s away from poles). Throws PoleError
/// at a pole or zero of Delta.
cplx log_delta(const FunctionalEquationDatum& datum, ComplexPoint s);

/// Delta'/Delta(s) = -2 log Q - sum lambda_j [psi(lambda_j(1-s)+conj mu_j) + psi(lambda_j s+mu_j)].
cplx delta_log_deriv_exact(const FunctionalEquationDatum& datum, ComplexPoint s);

/// Stirling asymptotic of Delta for |t| >= t0 and sigma in [-2, 3]; negative t
/// goes through Delta(conj s) = conj(Delta_conj(s)).
cplx delta_asymptotic(const DerivedInvariants& inv, ComplexPoint s);

/// |Delta(s)| ~ (lamQ2 |t|^d)^(1/2 - sigma), valid for both signs of t.
double delta_asymptotic_modulus(const DerivedInvariants& inv, ComplexPoint s);

/// -ell(t) - Theta/t + i d (1/2 - sigma)/t for |t| >= t0.
cplx delta_log_deriv_asymptotic(const DerivedInvariants& inv, ComplexPoint s);

/// Invariants of the conjugate datum obtained without re-deriving: Theta
/// flips sign and omega* is conjugated up to a fixed phase.
DerivedInvariants conjugate_invariants(const DerivedInvariants& inv);

namespace detail {
inline constexpr double kAsymptoticSigmaLo = -2.0;
inline constexpr double kAsymptoticSigmaHi = 3.0;
// No t0 / sigma checks; t must be nonzero.
cplx delta_asymptotic_unchecked(const DerivedInvariants& inv, ComplexPoint s);
}  // namespace detail

}  // namespace dfactor
