#include "dfactor/apoints.h"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <future>
#include <ostream>

#include "dfactor/errors.h"
#include "dfactor/quadrature.h"

namespace dfactor {

namespace {

// log(Delta/a) on the principal branch, from the log-space value of Delta.
cplx log_ratio(cplx log_delta_value, cplx a) {
  return {log_delta_value.real() - std::log(std::abs(a)),
          reduce_phase(log_delta_value.imag() - std::arg(a))};
}

// Delta'/(Delta - a) without forming Delta.
cplx winding_integrand(const FunctionalEquationDatum& datum, cplx a, ComplexPoint s) {
  const cplx E = log_delta(datum, s);
  const cplx LD = delta_log_deriv_exact(datum, s);
  const cplx q = -log_ratio(E, a);  // log(a / Delta)
  if (q.real() > 0.0) {
    const cplx r = exp_reduced(-q);  // Delta / a, small
    return -LD * r / (1.0 - r);
  }
  return LD / (1.0 - exp_reduced(q));
}

double phase_slope(const DerivedInvariants& inv, double t) {
  return ell(inv, t) + inv.theta / t;  // -phi'(t)
}

void require_nonzero(cplx a) {
  if (a == cplx(0.0, 0.0)) throw ZeroAError("a must be nonzero");
}

// Roots of phi(t) = target for every target in the list, each by bisection
// on [lo, hi] where phi is decreasing.
double solve_phase(const DerivedInvariants& inv, double target, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (asymptotic_phase(inv, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Seeds for phase targets arg a - 2 pi k + offset, for each offset.
std::vector<Seed> seeds_between(const DerivedInvariants& inv, cplx a, double lo, double hi,
                                std::span<const double> offsets) {
  if (!(phase_slope(inv, lo) > 0.0)) {
    throw DomainError(fmt::format("asymptotic phase is not decreasing at t = {}", lo));
  }
  const double arg_a = std::arg(a);
  const double log_abs_a = std::log(std::abs(a));
  const double phi_lo = asymptotic_phase(inv, lo);
  const double phi_hi = asymptotic_phase(inv, hi);
  std::vector<Seed> seeds;
  for (double off : offsets) {
    const double base = arg_a + off;
    const auto k_min = static_cast<std::int64_t>(std::ceil((base - phi_lo) / kTwoPi));
    const auto k_max = static_cast<std::int64_t>(std::floor((base - phi_hi) / kTwoPi));
    double bracket_lo = lo;
    for (std::int64_t k = k_min; k <= k_max; ++k) {
      const double target = base - kTwoPi * double(k);
      if (target > phi_lo || target < phi_hi) continue;
      const double g = solve_phase(inv, target, bracket_lo, hi);
      bracket_lo = g;
      seeds.push_back({0.5 - log_abs_a / ell(inv, g), g, k});
    }
  }
  std::sort(seeds.begin(), seeds.end(),
            [](const Seed& x, const Seed& y) { return x.gamma_guess < y.gamma_guess; });
  return seeds;
}

std::vector<APoint> dedup(std::vector<APoint> pts, const DerivedInvariants& inv) {
  std::sort(pts.begin(), pts.end(),
            [](const APoint& x, const APoint& y) { return x.gamma < y.gamma; });
  std::vector<APoint> out;
  for (const auto& p : pts) {
    if (!out.empty()) {
      APoint& q = out.back();
      const double l = std::abs(ell(inv, p.gamma));
      if (std::abs(p.gamma - q.gamma) < 1e-8 / l && std::abs(p.beta - q.beta) < 1e-8) {
        if (p.residual < q.residual) q = p;
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}


std::vector<APoint> refine_range(const FunctionalEquationDatum& datum,
                                 const DerivedInvariants& inv, cplx a, std::span<const Seed> seeds,
                                 double tol, std::size_t& failures) {
  std::vector<APoint> pts;
  pts.reserve(seeds.size());
  for (const auto& seed : seeds) {
    try {
      pts.push_back(refine_apoint(datum, inv, a, seed, tol));
    } catch (const NoConvergence&) {
      ++failures;
    } catch (const EscapedStrip&) {
      ++failures;
    }
  }
  return pts;
}

// Seeds are fixed before any work is split, so the refined points do not
// depend on the thread count.
std::vector<APoint> refine_all(const FunctionalEquationDatum& datum, const DerivedInvariants& inv,
                               cplx a, const std::vector<Seed>& seeds, const FindOptions& opts,
                               std::size_t& failures) {
  const std::size_t parts = std::min<std::size_t>(std::max(1u, opts.threads), seeds.size());
  if (parts <= 1) return refine_range(datum, inv, a, seeds, opts.tol, failures);
  std::vector<std::future<std::pair<std::vector<APoint>, std::size_t>>> jobs;
  const std::size_t chunk = (seeds.size() + parts - 1) / parts;
  for (std::size_t begin = 0; begin < seeds.size(); begin += chunk) {
    const std::span<const Seed> part(seeds.data() + begin, std::min(chunk, seeds.size() - begin));
    jobs.push_back(std::async(std::launch::async, [&, part] {
      std::size_t f = 0;
      auto pts = refine_range(datum, inv, a, part, opts.tol, f);
      return std::make_pair(std::move(pts), f);
    }));
  }
  std::vector<APoint> all;
  for (auto& j : jobs) {
    auto [pts, f] = j.get();
    failures += f;
    all.insert(all.end(), pts.begin(), pts.end());
  }
  return all;
}

std::vector<APoint> filter_window(std::vector<APoint> pts, double lo, double hi) {
  std::erase_if(pts, [&](const APoint& p) { return !(p.gamma > lo && p.gamma <= hi); });
  return pts;
}

void check_simple(const FunctionalEquationDatum& datum, const DerivedInvariants& inv, cplx a,
                  const std::vector<APoint>& pts) {
  for (const auto& p : pts) {
    const double dprime = std::abs(delta_log_deriv_exact(datum, ComplexPoint(p.value()))) * std::abs(a);
    if (dprime < 0.5 * ell(inv, p.gamma) * std::abs(a)) {
      throw MultiplicityError(fmt::format(
          "a-point {}{:+}i has |Delta'| = {} below ell*|a|/2; multiple point suspected", p.beta,
          p.gamma, dprime));
    }
  }
}

long count_with_inv(const FunctionalEquationDatum& datum, const DerivedInvariants& inv, cplx a,
                    const Rect& rect);

std::vector<APoint> search_window(const FunctionalEquationDatum& datum, const DerivedInvariants& inv,
                                  cplx a, double lo, double hi, const FindOptions& opts) {
  const double margin = kTwoPi / phase_slope(inv, lo);
  double seed_lo = std::max(lo - margin, 0.9 * lo);
  if (!(seed_lo > 0.0) || !(phase_slope(inv, seed_lo) > 0.5 * phase_slope(inv, lo))) seed_lo = lo;
  const double seed_hi = hi + kTwoPi / phase_slope(inv, hi);

  static constexpr double kRegular[] = {0.0};
  static constexpr double kDoubled[] = {0.0, 0.5 * kPi, -0.5 * kPi};

  std::size_t failures = 0;
  auto pts = refine_all(datum, inv, a, seeds_between(inv, a, seed_lo, seed_hi, kRegular), opts,
                        failures);
  pts = filter_window(dedup(std::move(pts), inv), lo, hi);

  long expected = -1;
  if (opts.certify) expected = count_with_inv(datum, inv, a, default_contour(inv, a, lo, hi));
  if (failures > 0 || (opts.certify && long(pts.size()) != expected)) {
    failures = 0;
    auto more = refine_all(datum, inv, a, seeds_between(inv, a, seed_lo, seed_hi, kDoubled),
                           opts, failures);
    more.insert(more.end(), pts.begin(), pts.end());
    pts = filter_window(dedup(std::move(more), inv), lo, hi);
    if (opts.certify && long(pts.size()) != expected) {
      throw CertificationMismatch(fmt::format(
          "datum '{}', a = {}{:+}i, window ({}, {}]: {} refined a-points but contour count {}",
          datum.name(), a.real(), a.imag(), lo, hi, pts.size(), expected));
    }
    if (!opts.certify && failures > 0) {
      throw NoConvergence(fmt::format("{} seeds failed to converge in window ({}, {}]", failures,
                                      lo, hi));
    }
  }
  check_simple(datum, inv, a, pts);
  return pts;
}

std::vector<APoint> search_positive(const FunctionalEquationDatum& datum,
                                    const DerivedInvariants& inv, cplx a, double lo, double hi,
                                    const FindOptions& opts) {
  if (lo < inv.t0) {
    throw DomainError(fmt::format("window start {} is below t0 = {}", lo, inv.t0));
  }
  return search_window(datum, inv, a, lo, hi, opts);
}

// Moves a horizontal side off an a-point: u(t) counts phase turns of
// Delta/a along the curve |Delta| = |a|; a-points sit at integer u.
double shift_horizontal(const FunctionalEquationDatum& datum, const DerivedInvariants& inv, cplx a,
                        double T) {
  constexpr double kMinTurns = 1e-4;
  const double l = ell(inv, T);
  const double sigma_star = 0.5 - std::log(std::abs(a)) / l;
  const cplx E = log_delta(datum, ComplexPoint(sigma_star, T));
  const double u = (E.imag() - std::arg(a)) / kTwoPi;
  const double frac = u - std::nearbyint(u);
  if (std::abs(frac) >= kMinTurns) return T;
  const double turns_per_t = phase_slope(inv, T) / kTwoPi;
  // u decreases with t: frac > 0 means the crossing lies just above T.
  if (frac > 0.0) return T - (0.5 - frac) / turns_per_t;
  return T + (0.5 + frac) / turns_per_t;
}

constexpr double kQuadratureTol = 1e-3;
constexpr double kIntegerDistance = 0.1;
constexpr int kQuadratureRetries = 3;

long count_with_inv(const FunctionalEquationDatum& datum, const DerivedInvariants& inv, cplx a,
                    const Rect& rect) {
  require_nonzero(a);
  if (!(rect.t_hi > rect.t_lo) || !(rect.sigma_hi > rect.sigma_lo)) {
    throw DomainError("contour rectangle is empty");
  }
  if (rect.t_lo < inv.t0) {
    throw DomainError(fmt::format("contour bottom {} is below t0 = {}", rect.t_lo, inv.t0));
  }
  const double t_lo = shift_horizontal(datum, inv, a, rect.t_lo);
  const double t_hi = shift_horizontal(datum, inv, a, rect.t_hi);
  if (t_hi <= t_lo) return 0;

  const auto horizontal = [&](double t) {
    return [&, t](double sigma) { return winding_integrand(datum, a, ComplexPoint(sigma, t)); };
  };
  const auto vertical = [&](double sigma) {
    return [&, sigma](double t) {
      return cplx(0.0, 1.0) * winding_integrand(datum, a, ComplexPoint(sigma, t));
    };
  };

  double tol = kQuadratureTol;
  double distance = 1.0;
  double winding = 0.0;
  for (int attempt = 0; attempt < kQuadratureRetries; ++attempt, tol *= 1e-2) {
    const auto bottom = integrate_gk15(horizontal(t_lo), rect.sigma_lo, rect.sigma_hi, tol);
    const auto right = integrate_gk15(vertical(rect.sigma_hi), t_lo, t_hi, tol);
    const auto top = integrate_gk15(horizontal(t_hi), rect.sigma_lo, rect.sigma_hi, tol);
    const auto left = integrate_gk15(vertical(rect.sigma_lo), t_lo, t_hi, tol);
    const cplx total = (bottom.value + right.value - top.value - left.value) / cplx(0.0, kTwoPi);
    winding = total.real();
    distance = std::max(std::abs(winding - std::nearbyint(winding)), std::abs(total.imag()));
    if (distance <= kIntegerDistance && bottom.converged && right.converged && top.converged &&
        left.converged) {
      return std::lround(winding);
    }
  }
  throw QuadratureInconclusive(fmt::format(
      "winding number {} is {} away from an integer on ({}, {}]", winding, distance, t_lo, t_hi));
}

}  // namespace

bool APointSet::contains_height(double gamma) const {
  if (t_hi <= 0.0) return gamma >= t_lo && gamma < t_hi;
  return gamma > t_lo && gamma <= t_hi;
}

std::vector<APoint> APointSet::nontrivial() const {
  std::vector<APoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [](const APoint& p) { return p.in_strip(); });
  return out;
}

double asymptotic_phase(const DerivedInvariants& inv, double t) {
  return -t * ell(inv, t) + inv.d * t - inv.theta * std::log(t) + std::arg(inv.omega_star);
}

std::vector<Seed> seed_apoints(const DerivedInvariants& inv, cplx a, double t_lo, double t_hi) {
  require_nonzero(a);
  if (t_lo < inv.t0) {
    throw DomainError(fmt::format("seed window start {} is below t0 = {}", t_lo, inv.t0));
  }
  if (t_hi < t_lo) throw DomainError("seed window is reversed");
  static constexpr double kRegular[] = {0.0};
  return seeds_between(inv, a, t_lo, t_hi, kRegular);
}

APoint refine_apoint(const FunctionalEquationDatum& datum, const DerivedInvariants& inv, cplx a,
                     const Seed& seed, double tol) {
  require_nonzero(a);
  if (!(tol >= kMinNewtonTol)) {
    throw DomainError(fmt::format("Newton tolerance {} below {}", tol, kMinNewtonTol));
  }
  if (!(seed.gamma_guess > 0.0) || !(phase_slope(inv, seed.gamma_guess) > 0.0)) {
    throw DomainError(fmt::format("seed height {} outside the monotone phase region",
                                  seed.gamma_guess));
  }
  const double half_spacing = kPi / phase_slope(inv, seed.gamma_guess);
  cplx s{seed.beta_guess, seed.gamma_guess};
  for (int it = 0; it <= kMaxNewtonIters; ++it) {
    const cplx w = log_ratio(log_delta(datum, ComplexPoint(s)), a);
    const double residual = std::abs(a) * std::abs(cexpm1(w));
    if (residual <= tol) {
      return {s.real(), s.imag(), residual, it, seed.k};
    }
    if (it == kMaxNewtonIters) break;
    const cplx step = w / delta_log_deriv_exact(datum, ComplexPoint(s));
    double damping = 1.0;
    cplx next = s - step;
    int halvings = 0;
    while (std::abs(next.real() - seed.beta_guess) > kNewtonSigmaBand ||
           std::abs(next.imag() - seed.gamma_guess) > half_spacing) {
      if (++halvings > 40) {
        throw EscapedStrip(fmt::format("Newton iterate from seed k = {} left the search band",
                                       seed.k));
      }
      damping *= 0.5;
      next = s - damping * step;
    }
    s = next;
  }
  throw NoConvergence(fmt::format("Newton from seed k = {} (t = {}) did not reach {} in {} steps",
                                  seed.k, seed.gamma_guess, tol, kMaxNewtonIters));
}

APointSet find_apoints(const FunctionalEquationDatum& datum, cplx a, double t_lo, double t_hi,
                       const FindOptions& opts) {
  require_nonzero(a);
  if (!(t_hi > t_lo)) throw DomainError(fmt::format("empty window [{}, {}]", t_lo, t_hi));
  if (t_lo < 0.0 && t_hi > 0.0) throw DomainError("window must not contain t = 0");

  APointSet set;
  set.datum = std::make_shared<const FunctionalEquationDatum>(datum);
  set.a = a;
  set.t_lo = t_lo;
  set.t_hi = t_hi;

  if (t_hi <= 0.0) {
    // gamma < 0: conj(delta) is a conj(a)-point of the conjugate datum.
    const FunctionalEquationDatum conj = conjugate_datum(datum);
    const DerivedInvariants inv = derive_invariants(conj, opts.t0_override);
    auto pts = search_positive(conj, inv, std::conj(a), -t_hi, -t_lo, opts);
    std::reverse(pts.begin(), pts.end());
    for (auto& p : pts) p.gamma = -p.gamma;
    set.points = std::move(pts);
    return set;
  }
  const DerivedInvariants inv = derive_invariants(datum, opts.t0_override);
  set.points = search_positive(datum, inv, a, t_lo, t_hi, opts);
  return set;
}

double contour_c(cplx a) { return 2.0 * (std::abs(std::log(std::abs(a))) + 1.0); }

double contour_alpha(const DerivedInvariants& inv, cplx a, double t) {
  return 0.5 + contour_c(a) / ell(inv, t);
}

Rect default_contour(const DerivedInvariants& inv, cplx a, double t_lo, double t_hi) {
  require_nonzero(a);
  if (!(ell(inv, t_lo) > 0.0)) throw DomainError("contour needs ell(t_lo) > 0");
  const double alpha = contour_alpha(inv, a, t_lo);
  return {1.0 - alpha, alpha, t_lo, t_hi};
}

long count_argument_principle(const FunctionalEquationDatum& datum, cplx a, const Rect& rect) {
  return count_with_inv(datum, derive_invariants(datum), a, rect);
}

double rvm_prediction(const DerivedInvariants& inv, double T, int sign) {
  if (!(T >= 3.0)) throw DomainError(fmt::format("RvM prediction needs T >= 3, got {}", T));
  const double s = sign >= 0 ? 1.0 : -1.0;
  return inv.d / kTwoPi * T * std::log(T) + (std::log(inv.lamQ2) - inv.d) / kTwoPi * T +
         s * inv.theta / kTwoPi * std::log(T);
}

cplx fractional_decomposition_residual(const FunctionalEquationDatum& datum, cplx a,
                                       ComplexPoint s, const APointSet& window_points) {
  require_nonzero(a);
  const double at = std::abs(s.t);
  if (!(at > std::exp(1.0))) throw DomainError("fractional decomposition needs |t| > e");
  const double radius = 1.0 / std::log(std::log(at));
  const double need_lo = s.t - radius;
  const double need_hi = s.t + radius;
  const double have_lo = std::min(window_points.t_lo, window_points.t_hi);
  const double have_hi = std::max(window_points.t_lo, window_points.t_hi);
  if (need_lo < have_lo || need_hi > have_hi) {
    throw InsufficientWindow(fmt::format(
        "points cover [{}, {}] but the local sum needs [{}, {}]", have_lo, have_hi, need_lo,
        need_hi));
  }
  CompensatedSum sum;
  sum += winding_integrand(datum, a, s);
  for (const auto& p : window_points.points) {
    if (std::abs(s.t - p.gamma) <= radius) sum -= 1.0 / (s.value() - p.value());
  }
  return sum.value();
}

void write_apoints_csv(std::ostream& os, const APointSet& set, const DerivedInvariants& inv) {
  fmt::print(os, "# datum={}\n", set.datum ? set.datum->name() : std::string("?"));
  fmt::print(os, "# d={:.17g} lamQ2={:.17g} eta={:.17g} Theta={:.17g} t0={:.17g}\n", inv.d,
             inv.lamQ2, inv.eta, inv.theta, inv.t0);
  fmt::print(os, "# a=[{:.17g},{:.17g}] window=[{:.17g},{:.17g}]\n", set.a.real(), set.a.imag(),
             set.t_lo, set.t_hi);
  os << "k,gamma,beta,residual,newton_iters\n";
  for (const auto& p : set.points) {
    fmt::print(os, "{},{:.17g},{:.17g},{:.17g},{}\n", p.seed_index, p.gamma, p.beta, p.residual,
               p.newton_iters);
  }
}

}  // namespace dfactor
