#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "dfactor/fe_core.h"
#include "dfactor/special_fn.h"

namespace dfactor {

/// One solution delta = beta + i gamma of Delta(s) = a.
struct APoint {
  double beta = 0.0;
  double gamma = 0.0;
  double residual = 0.0;   // |Delta(delta) - a|
  int newton_iters = 0;
  std::int64_t seed_index = 0;  // phase-branch index k

  cplx value() const { return {beta, gamma}; }
  /// Inside the closed critical strip, i.e. a nontrivial a-point.
  bool in_strip() const { return beta >= 0.0 && beta <= 1.0; }
};

/// a-points of Delta for one datum and one value a, over the height window.
/// Positive windows hold t_lo < gamma <= t_hi; negative windows (t_hi < 0)
/// hold t_lo <= gamma < t_hi, so |gamma| is always half-open at the bottom.
struct APointSet {
  std::shared_ptr<const FunctionalEquationDatum> datum;
  cplx a{};
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::vector<APoint> points;  // strictly increasing gamma

  std::size_t size() const { return points.size(); }
  bool contains_height(double gamma) const;
  /// Points lying in 0 <= beta <= 1.
  std::vector<APoint> nontrivial() const;
};

struct Seed {
  double beta_guess = 0.0;
  double gamma_guess = 0.0;
  std::int64_t k = 0;
};

/// Asymptotic phase phi(t) = -t ell(t) + d t - Theta log t + arg omega*.
double asymptotic_phase(const DerivedInvariants& inv, double t);

/// One seed per branch k with phi(gamma) = arg a - 2 pi k in [t_lo, t_hi].
std::vector<Seed> seed_apoints(const DerivedInvariants& inv, cplx a, double t_lo, double t_hi);

inline constexpr double kDefaultNewtonTol = 1e-10;
inline constexpr double kMinNewtonTol = 1e-12;
inline constexpr int kMaxNewtonIters = 50;
inline constexpr double kNewtonSigmaBand = 0.25;

/// Newton iteration on log(Delta(s)/a) from a seed. Steps are halved to keep
/// |sigma - beta_guess| <= 1/4 and |t - gamma_guess| within half a spacing.
APoint refine_apoint(const FunctionalEquationDatum& datum, const DerivedInvariants& inv, cplx a,
                     const Seed& seed, double tol = kDefaultNewtonTol);

struct FindOptions {
  double tol = kDefaultNewtonTol;
  bool certify = true;
  unsigned threads = 1;
  std::optional<double> t0_override;
};

/// All a-points with height in the window, refined, deduplicated and, when
/// opts.certify, checked against count_argument_principle on the same window.
APointSet find_apoints(const FunctionalEquationDatum& datum, cplx a, double t_lo, double t_hi,
                       const FindOptions& opts = {});

struct Rect {
  double sigma_lo = 0.0;
  double sigma_hi = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
};

/// alpha(t) = 1/2 + c/ell(t) with c = 2(|log|a|| + 1).
double contour_c(cplx a);
double contour_alpha(const DerivedInvariants& inv, cplx a, double t);

/// Rectangle [1 - alpha, alpha] x [t_lo, t_hi] with alpha taken at t_lo.
Rect default_contour(const DerivedInvariants& inv, cplx a, double t_lo, double t_hi);

/// Winding number of Delta - a around rect (counterclockwise), i.e. the number
/// of a-points inside. Horizontal sides closer than 1e-4 spacings to an
/// a-point are moved half a spacing so that the count keeps the (t_lo, t_hi]
/// convention. Requires t_lo >= t0 (positive windows only).
long count_argument_principle(const FunctionalEquationDatum& datum, cplx a, const Rect& rect);

/// Main terms of N_+(T) (sign = +1) or N_-(T) (sign = -1).
double rvm_prediction(const DerivedInvariants& inv, double T, int sign);

/// Delta'/(Delta - a)(s) minus sum over |t - gamma| <= 1/log log t of 1/(s - delta).
cplx fractional_decomposition_residual(const FunctionalEquationDatum& datum, cplx a,
                                       ComplexPoint s, const APointSet& window_points);

/// CSV: '#' header lines with datum, invariants, a and window, then
/// k,gamma,beta,residual,newton_iters.
void write_apoints_csv(std::ostream& os, const APointSet& set, const DerivedInvariants& inv);

}  // namespace dfactor
