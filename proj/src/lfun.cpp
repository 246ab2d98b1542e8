#include "dfactor/lfun.h"

#include <algorithm>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <fmt/format.h>

#include "dfactor/characters.h"
#include "dfactor/errors.h"

namespace dfactor {

namespace {

constexpr int kMaxBernoulliTerms = 40;
constexpr int kMinTruncation = 20;

void check_eval_domain(ComplexPoint s) {
  if (std::abs(s.t) > kMaxEvalHeight) {
    throw DomainError(fmt::format("|t| = {} exceeds the evaluator cap {}", std::abs(s.t),
                                  kMaxEvalHeight));
  }
  if (s.sigma < kEvalSigmaLo || s.sigma > kEvalSigmaHi) {
    throw DomainError(fmt::format("sigma = {} outside [{}, {}]", s.sigma, kEvalSigmaLo,
                                  kEvalSigmaHi));
  }
}

// Euler-Maclaurin pieces of zeta(s, w) with cutoff N: everything except
// x^(1-s)/(s-1), x = N + w, which is returned in the form
// x^(1-s)/(s-1) = pole_shift + 1/(s-1) so that character sums can drop the
// 1/(s-1) exactly.
struct HurwitzParts {
  cplx regular{};
  cplx pole_shift{};
  bool converged = false;
};

HurwitzParts hurwitz_parts(cplx s, double w, long N, double tol) {
  HurwitzParts out;
  CompensatedSum sum;
  for (long n = 0; n < N; ++n) sum += exp_reduced(-s * std::log(double(n) + w));
  const double x = double(N) + w;
  const double lx = std::log(x);
  const cplx x_pow = exp_reduced(-s * lx);  // x^-s
  sum += 0.5 * x_pow;

  // B_2k/(2k)! s(s+1)...(s+2k-2) x^(-s-2k+1)
  cplx rising = s;
  cplx power = x_pow / x;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kMaxBernoulliTerms; ++k) {
    if (k > 1) {
      rising *= (s + double(2 * k - 3)) * (s + double(2 * k - 2));
      power /= x * x;
    }
    const double coef = boost::math::bernoulli_b2n<double>(k) /
                        boost::math::factorial<double>(static_cast<unsigned>(2 * k));
    const cplx term = coef * rising * power;
    const double mag = std::abs(term);
    if (mag > prev) break;  // asymptotic series has started to diverge
    sum += term;
    prev = mag;
    if (mag <= 1e-3 * tol) {
      out.converged = true;
      break;
    }
  }
  out.regular = sum.value();
  out.pole_shift = -lx * expm1c((1.0 - s) * lx);
  return out;
}

long initial_cutoff(ComplexPoint s) {
  return std::max<long>(kMinTruncation, static_cast<long>(std::ceil(2.0 * std::abs(s.t))));
}

bool is_one(ComplexPoint s) { return s.sigma == 1.0 && s.t == 0.0; }

cplx convolve(const std::vector<LFunction::Coefficients>& factors, std::size_t from, long n) {
  if (from + 1 == factors.size()) return factors[from](n);
  CompensatedSum sum;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    sum += factors[from](d) * convolve(factors, from + 1, n / d);
    if (d * d != n) sum += factors[from](n / d) * convolve(factors, from + 1, d);
  }
  return sum.value();
}

cplx dirichlet_polynomial(const std::vector<cplx>& f, ComplexPoint s) {
  CompensatedSum sum;
  for (std::size_t n = 1; n <= f.size(); ++n) {
    if (f[n - 1] == cplx(0.0, 0.0)) continue;
    sum += f[n - 1] * exp_reduced(-s.value() * std::log(double(n)));
  }
  return sum.value();
}

FunctionalEquationDatum zeta_datum() {
  return FunctionalEquationDatum("zeta", 1.0 / std::sqrt(kPi), 1.0, {{0.5, 0.0}});
}

LFunction zeta_function() {
  return LFunction(
      zeta_datum(), EvaluatorKind::Zeta, [](long) { return cplx(1.0, 0.0); },
      [](ComplexPoint s) { return eval_zeta(s); }, 13.0 / 84.0);
}

LFunction dirichlet_function(std::string name, int q, int index) {
  const DirichletCharacter chi = conrey_character(q, index);
  if (!chi.primitive() || chi.principal()) {
    throw BadCharacter(fmt::format("chi_{}({}, .) is not primitive non-principal", q, index));
  }
  const double kappa = chi.odd ? 1.0 : 0.0;
  const cplx i_kappa = chi.odd ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
  const cplx omega = gauss_sum(chi) / (i_kappa * std::sqrt(double(q)));
  FunctionalEquationDatum datum(std::move(name), std::sqrt(q / kPi), omega,
                                {{0.5, cplx(kappa / 2.0, 0.0)}});
  return LFunction(
      std::move(datum), EvaluatorKind::HurwitzDirichlet, [chi](long n) { return chi(n); },
      [q, index](ComplexPoint s) { return eval_dirichlet_l(q, index, s); }, 0.25);
}

}  // namespace

cplx eval_hurwitz(ComplexPoint s, double w, double tol) {
  if (!(w > 0.0 && w <= 1.0)) throw DomainError(fmt::format("Hurwitz shift {} outside (0, 1]", w));
  if (is_one(s)) throw PoleError("Hurwitz zeta has a pole at s = 1");
  check_eval_domain(s);
  const cplx sv = s.value();
  for (long N = initial_cutoff(s);; N *= 2) {
    const HurwitzParts parts = hurwitz_parts(sv, w, N, tol);
    if (parts.converged || N > 4 * kMaxEvalHeight) {
      return parts.regular + parts.pole_shift + 1.0 / (sv - 1.0);
    }
  }
}

cplx eval_zeta(ComplexPoint s, double tol) {
  if (is_one(s)) throw PoleError("zeta has a pole at s = 1");
  return eval_hurwitz(s, 1.0, tol);
}

cplx eval_dirichlet_l(int q, int index, ComplexPoint s, double tol) {
  const DirichletCharacter chi = conrey_character(q, index);
  if (chi.principal()) throw BadCharacter(fmt::format("chi_{}({}, .) is principal", q, index));
  if (!chi.primitive()) {
    throw BadCharacter(fmt::format("chi_{}({}, .) is induced from modulus {}", q, index,
                                   chi.conductor));
  }
  check_eval_domain(s);
  const cplx sv = s.value();
  for (long N = initial_cutoff(s);; N *= 2) {
    CompensatedSum sum;
    bool converged = true;
    for (int m = 1; m <= q; ++m) {
      if (chi.values[m % q] == cplx(0.0, 0.0)) continue;
      const HurwitzParts parts = hurwitz_parts(sv, double(m) / q, N, tol);
      converged = converged && parts.converged;
      // sum chi(m) = 0 removes the 1/(s-1) of each Hurwitz term.
      sum += chi(m) * (parts.regular + parts.pole_shift);
    }
    if (converged || N > 4 * kMaxEvalHeight) {
      return exp_reduced(-sv * std::log(double(q))) * sum.value();
    }
  }
}

const char* to_string(EvaluatorKind kind) {
  switch (kind) {
    case EvaluatorKind::Zeta: return "zeta";
    case EvaluatorKind::HurwitzDirichlet: return "hurwitz-dirichlet";
    case EvaluatorKind::PowerProduct: return "power-product";
    case EvaluatorKind::CoefficientList: return "coefficient-list";
    case EvaluatorKind::DeltaOnly: return "delta-only";
  }
  return "?";
}

LFunction::LFunction(FunctionalEquationDatum datum, EvaluatorKind kind, Coefficients coefficients,
                     Evaluator evaluator, double growth_A)
    : datum_(std::move(datum)),
      kind_(kind),
      coefficients_(std::move(coefficients)),
      evaluator_(std::move(evaluator)),
      growth_A_(growth_A) {
  if (!(growth_A_ >= 0.0)) throw InvalidDatum(fmt::format("growth_A = {} must be >= 0", growth_A_));
}

cplx LFunction::coefficient(long n) const {
  if (!coefficients_) {
    throw CoefficientsUnavailable(fmt::format("'{}' carries no Dirichlet coefficients",
                                              datum_.name()));
  }
  if (n < 1) throw DomainError(fmt::format("coefficient index {} < 1", n));
  return coefficients_(n);
}

cplx LFunction::evaluate(ComplexPoint s) const {
  if (!evaluator_) {
    throw CoefficientsUnavailable(fmt::format("'{}' has no evaluator (Delta-only entry)",
                                              datum_.name()));
  }
  return evaluator_(s);
}

cplx eval_power_product(std::span<const LFunction> bases, std::span<const int> exponents,
                        ComplexPoint s) {
  if (bases.size() != exponents.size() || bases.empty()) {
    throw DomainError("power product needs one positive exponent per base");
  }
  cplx value = 1.0;
  for (std::size_t j = 0; j < bases.size(); ++j) {
    if (exponents[j] < 1) throw DomainError("power product exponents must be positive");
    const cplx v = bases[j].evaluate(s);
    for (int e = 0; e < exponents[j]; ++e) value *= v;
  }
  return value;
}

LFunction power_product(std::string name, std::span<const LFunction> bases,
                        std::span<const int> exponents) {
  if (bases.size() != exponents.size() || bases.empty()) {
    throw DomainError("power product needs one positive exponent per base");
  }
  std::vector<FunctionalEquationDatum> data;
  std::vector<LFunction::Coefficients> factors;
  double A = 0.0;
  bool all_coefficients = true;
  for (std::size_t j = 0; j < bases.size(); ++j) {
    if (exponents[j] < 1) throw DomainError("power product exponents must be positive");
    data.push_back(bases[j].datum());
    A += exponents[j] * bases[j].growth_A();
    all_coefficients = all_coefficients && bases[j].has_coefficients();
    for (int e = 0; e < exponents[j]; ++e) {
      const LFunction& base = bases[j];
      factors.push_back([base](long n) { return base.coefficient(n); });
    }
  }
  FunctionalEquationDatum datum = product_datum(std::move(name), data, exponents);
  if (!all_coefficients) {
    return LFunction(std::move(datum), EvaluatorKind::DeltaOnly, {}, {}, A);
  }
  std::vector<LFunction> kept(bases.begin(), bases.end());
  std::vector<int> exps(exponents.begin(), exponents.end());
  return LFunction(
      std::move(datum), EvaluatorKind::PowerProduct,
      [factors](long n) { return convolve(factors, 0, n); },
      [kept, exps](ComplexPoint s) { return eval_power_product(kept, exps, s); }, A);
}

LFunction coefficient_list_function(FunctionalEquationDatum datum, std::vector<cplx> coefficients,
                                    std::optional<double> growth_A) {
  if (coefficients.empty()) throw InvalidDatum("coefficient list is empty");
  const double A = growth_A.value_or(datum.degree() / 4.0);
  auto shared = std::make_shared<const std::vector<cplx>>(std::move(coefficients));
  return LFunction(
      std::move(datum), EvaluatorKind::CoefficientList,
      [shared](long n) {
        return std::size_t(n) <= shared->size() ? (*shared)[n - 1] : cplx(0.0, 0.0);
      },
      [shared](ComplexPoint s) { return dirichlet_polynomial(*shared, s); }, A);
}

GrowthExponent growth_exponent(double sigma, double A, double d) {
  if (sigma >= 1.0) return {0.0, false};
  if (sigma >= 0.5) return {2.0 * A * (1.0 - sigma), false};
  return {d / 2.0 + (2.0 * A - d) * sigma, sigma < 0.0};
}

std::vector<std::string> catalog_names() {
  return {"zeta", "dirichlet-4", "dirichlet-5-odd", "zeta^2", "zeta^3", "synthetic-theta"};
}

LFunction catalog_get(const std::string& name) {
  if (name == "zeta") return zeta_function();
  if (name == "dirichlet-4") return dirichlet_function(name, 4, 3);
  if (name == "dirichlet-5-odd") return dirichlet_function(name, 5, 2);
  if (name == "zeta^2" || name == "zeta^3") {
    const LFunction z = zeta_function();
    const int k = name == "zeta^2" ? 2 : 3;
    return power_product(name, std::span(&z, 1), std::span(&k, 1));
  }
  if (name == "synthetic-theta") {
    FunctionalEquationDatum datum(name, 1.0, 1.0, {{1.0, cplx(0.5, 3.0)}});
    const double A = datum.degree() / 4.0;
    return LFunction(std::move(datum), EvaluatorKind::DeltaOnly, {}, {}, A);
  }
  throw UnknownEntry(fmt::format("no catalog entry named '{}'", name));
}

}  // namespace dfactor
