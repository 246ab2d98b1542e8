#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfactor/fe_core.h"
#include "dfactor/special_fn.h"

namespace dfactor {

inline constexpr double kDefaultEvalTol = 1e-10;
inline constexpr double kMaxEvalHeight = 1e4;
inline constexpr double kEvalSigmaLo = -1.0;
inline constexpr double kEvalSigmaHi = 3.0;

/// zeta(s) by Euler-Maclaurin with N ~ max(20, 2|t|). Throws PoleError at
/// s = 1 and DomainError outside |t| <= 1e4, -1 <= sigma <= 3.
cplx eval_zeta(ComplexPoint s, double tol = kDefaultEvalTol);

/// Hurwitz zeta(s, w) for w in (0, 1], same scheme.
cplx eval_hurwitz(ComplexPoint s, double w, double tol = kDefaultEvalTol);

/// L(s, chi) = q^-s sum_m chi(m) zeta(s, m/q) for a primitive non-principal
/// character in Conrey labelling.
cplx eval_dirichlet_l(int q, int index, ComplexPoint s, double tol = kDefaultEvalTol);

enum class EvaluatorKind { Zeta, HurwitzDirichlet, PowerProduct, CoefficientList, DeltaOnly };

const char* to_string(EvaluatorKind kind);

/// A member of the extended Selberg class: functional-equation datum,
/// Dirichlet coefficients, growth exponent A and an evaluator. Delta-only
/// entries have neither coefficients nor evaluator.
class LFunction {
 public:
  using Coefficients = std::function<cplx(long)>;
  using Evaluator = std::function<cplx(ComplexPoint)>;

  LFunction(FunctionalEquationDatum datum, EvaluatorKind kind, Coefficients coefficients,
            Evaluator evaluator, double growth_A);

  const FunctionalEquationDatum& datum() const { return datum_; }
  EvaluatorKind kind() const { return kind_; }
  double growth_A() const { return growth_A_; }
  bool has_coefficients() const { return static_cast<bool>(coefficients_); }

  /// f(n) for n >= 1; CoefficientsUnavailable for Delta-only entries.
  cplx coefficient(long n) const;
  cplx leading() const { return coefficient(1); }
  /// L(s); CoefficientsUnavailable for Delta-only entries.
  cplx evaluate(ComplexPoint s) const;

 private:
  FunctionalEquationDatum datum_;
  EvaluatorKind kind_;
  Coefficients coefficients_;
  Evaluator evaluator_;
  double growth_A_;
};

/// prod L_j(s)^e_j, each exponent positive.
cplx eval_power_product(std::span<const LFunction> bases, std::span<const int> exponents,
                        ComplexPoint s);

/// Product L-function: datum by product_datum, coefficients by Dirichlet
/// convolution, A = sum e_j A_j.
LFunction power_product(std::string name, std::span<const LFunction> bases,
                        std::span<const int> exponents);

/// Finite Dirichlet series sum_{n <= N} f(n) n^-s from an explicit coefficient
/// list; f(n) = 0 beyond the list.
LFunction coefficient_list_function(FunctionalEquationDatum datum, std::vector<cplx> coefficients,
                                    std::optional<double> growth_A = {});

/// Phragmen-Lindelof exponent mu(sigma) for L(sigma + it) << |t|^mu.
struct GrowthExponent {
  double value = 0.0;
  bool extrapolated = false;  // sigma < 0: first branch continued
};
GrowthExponent growth_exponent(double sigma, double A, double d);

/// Built-in entries: zeta, dirichlet-4, dirichlet-5-odd, zeta^2, zeta^3,
/// synthetic-theta. Throws UnknownEntry otherwise.
LFunction catalog_get(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace dfactor
