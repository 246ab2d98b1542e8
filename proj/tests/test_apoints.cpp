#include <sstream>

#include "doctest.h"
#include "dfactor/apoints.h"
#include "dfactor/errors.h"
#include "support.h"

using namespace dfactor;
using doctest::Approx;

TEST_SUITE("apoints") {

TEST_CASE("seeds") {
  const auto inv = derive_invariants(testing::zeta_datum());
  const double lo = 50.0;
  const double hi = lo + 3 * kTwoPi / ell(inv, lo);
  const auto seeds = seed_apoints(inv, 1.0, lo, hi);
  CHECK(seeds.size() == 3);
  for (std::size_t i = 1; i < seeds.size(); ++i) {
    const double gap = seeds[i].gamma_guess - seeds[i - 1].gamma_guess;
    CHECK(gap == Approx(kTwoPi / ell(inv, seeds[i].gamma_guess)).epsilon(0.02));
    CHECK(seeds[i].k == seeds[i - 1].k + 1);
  }
  for (const auto& s : seed_apoints(inv, std::polar(1.0, 2.0), 100.0, 200.0)) {
    CHECK(s.beta_guess == 0.5);
  }
  CHECK_THROWS_AS(seed_apoints(inv, 0.0, 50.0, 60.0), ZeroAError);
  CHECK_THROWS_AS(seed_apoints(inv, 1.0, 10.0, 60.0), DomainError);
}

TEST_CASE("refinement reproduces high-precision a-points") {
  const auto z = testing::zeta_datum();
  auto set = find_apoints(z, 2.0, 20.0, 25.0);
  REQUIRE(set.size() == 1);
  CHECK(std::abs(set.points[0].value() - cplx(-0.031063987562413406, 23.174945625752941)) < 1e-12);
  set = find_apoints(z, cplx(0, 1), 20.0, 22.5);
  REQUIRE(set.size() == 1);
  CHECK(std::abs(set.points[0].value() - cplx(0.5, 21.941085526363409)) < 1e-12);

  const auto th = testing::theta_datum();
  set = find_apoints(th, 2.0, 93.2, 94.0);
  REQUIRE(set.size() == 1);
  CHECK(std::abs(set.points[0].value() - cplx(0.42416829931741953, 93.572164576890678)) < 1e-11);
  set = find_apoints(th, 2.0, -94.0, -93.2);
  REQUIRE(set.size() == 1);
  CHECK(std::abs(set.points[0].value() - cplx(0.42304517552576324, -93.340659037386732)) < 1e-11);
}

TEST_CASE("refinement from seeds at twice t0") {
  testing::Gen gen(3);
  for (const char* name : {"zeta", "dirichlet-5-odd", "zeta^2", "synthetic-theta"}) {
    const auto D = catalog_get(name).datum();
    const auto inv = derive_invariants(D);
    for (cplx a : {cplx(2, 0), cplx(0, 1), cplx(0.5, 0), cplx(-3, 0)}) {
      const double lo = gen.uniform(2 * inv.t0, 1500.0);
      for (const auto& seed : seed_apoints(inv, a, lo, lo + 5.0)) {
        const APoint p = refine_apoint(D, inv, a, seed);
        CHECK(p.newton_iters <= 8);
        CHECK(p.residual <= 1e-11);
        const double l = ell(inv, p.gamma);
        CHECK(std::abs(p.beta - (0.5 - std::log(std::abs(a)) / l)) <= 10.0 / (p.gamma * l));
      }
    }
  }
  const auto inv = derive_invariants(testing::zeta_datum());
  const Seed seed = seed_apoints(inv, 2.0, 100.0, 110.0).front();
  CHECK_THROWS_AS(refine_apoint(testing::zeta_datum(), inv, 2.0, seed, 1e-13), DomainError);
}

TEST_CASE("find_apoints windows") {
  const auto z = testing::zeta_datum();
  const auto inv = derive_invariants(z);
  CHECK(find_apoints(z, 2.0, inv.t0, inv.t0 + 1e-6).size() == 0);
  CHECK_THROWS_AS(find_apoints(z, 0.0, 50.0, 60.0), ZeroAError);
  CHECK_THROWS_AS(find_apoints(z, 2.0, 5.0, 60.0), DomainError);
  CHECK_THROWS_AS(find_apoints(z, 2.0, -10.0, 60.0), DomainError);

  const auto pos = find_apoints(z, 2.0, inv.t0, 100.0);
  const auto neg = find_apoints(z, 2.0, -100.0, -inv.t0);
  REQUIRE(pos.size() == neg.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const auto& p = pos.points[i];
    const auto& q = neg.points[pos.size() - 1 - i];
    CHECK(q.gamma == Approx(-p.gamma).epsilon(1e-13));
    CHECK(q.beta == Approx(p.beta).epsilon(1e-10));
  }
  for (std::size_t i = 1; i < pos.size(); ++i) CHECK(pos.points[i].gamma > pos.points[i - 1].gamma);
  CHECK(pos.contains_height(100.0));
  CHECK_FALSE(pos.contains_height(inv.t0));
  CHECK(neg.contains_height(-100.0));
  CHECK_FALSE(neg.contains_height(-inv.t0));
}

TEST_CASE("a and 1/conj(a) points are reflections") {
  const auto z = testing::zeta_datum();
  const auto p = find_apoints(z, cplx(2, 1), 100.0, 160.0);
  const auto q = find_apoints(z, 1.0 / std::conj(cplx(2, 1)), 100.0, 160.0);
  REQUIRE(p.size() == q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(q.points[i].gamma == Approx(p.points[i].gamma).epsilon(1e-13));
    CHECK(q.points[i].beta == Approx(1.0 - p.points[i].beta).epsilon(1e-12));
  }
}

TEST_CASE("parallel search equals serial search") {
  const auto z = testing::zeta_datum();
  FindOptions serial, parallel;
  parallel.threads = 4;
  const auto a = find_apoints(z, cplx(0, 1), 200.0, 600.0, serial);
  const auto b = find_apoints(z, cplx(0, 1), 200.0, 600.0, parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.points[i].gamma == b.points[i].gamma);
    CHECK(a.points[i].beta == b.points[i].beta);
  }
}

TEST_CASE("argument-principle count") {
  const auto z = testing::zeta_datum();
  const auto inv = derive_invariants(z);
  const auto set = find_apoints(z, 1.0, inv.t0, 100.0);
  CHECK(count_argument_principle(z, 1.0, default_contour(inv, 1.0, inv.t0, 100.0)) ==
        long(set.size()));
  // Window shorter than a spacing containing no a-point.
  const double g = set.points[3].gamma;
  CHECK(count_argument_principle(z, 1.0, default_contour(inv, 1.0, g + 0.01, g + 0.02)) == 0);
  // A horizontal side exactly on an a-point: (lo, hi] keeps it on top only.
  const double g1 = set.points[1].gamma;
  CHECK(count_argument_principle(z, 1.0, default_contour(inv, 1.0, g1, g + 0.01)) == 2);
  CHECK(count_argument_principle(z, 1.0, default_contour(inv, 1.0, inv.t0, g1)) == 2);
  // Additivity.
  const long whole = count_argument_principle(z, 2.0, default_contour(inv, 2.0, 30.0, 400.0));
  const long left = count_argument_principle(z, 2.0, default_contour(inv, 2.0, 30.0, 211.7));
  const long right = count_argument_principle(z, 2.0, default_contour(inv, 2.0, 211.7, 400.0));
  CHECK(whole == left + right);
  CHECK(contour_c(2.0) == Approx(2 * (std::log(2.0) + 1)));
  CHECK(default_contour(inv, 2.0, 100.0, 200.0).sigma_hi ==
        Approx(0.5 + contour_c(2.0) / ell(inv, 100.0)));
}

TEST_CASE("simplicity lower bound") {
  const auto z = testing::zeta_datum();
  for (cplx a : {cplx(2, 0), cplx(0, 1), cplx(-3, 0)}) {
    const auto set = find_apoints(z, a, 100.0, 300.0);
    const auto inv = derive_invariants(z);
    for (const auto& p : set.points) {
      const double dprime = std::abs(delta_log_deriv_exact(z, ComplexPoint(p.value()))) * std::abs(a);
      CHECK(dprime >= ell(inv, p.gamma) * std::abs(a) / 2);
    }
  }
}

TEST_CASE("RvM main terms") {
  const auto zi = derive_invariants(testing::zeta_datum());
  CHECK(std::abs(rvm_prediction(zi, 100.0, 1) - 28.127343587325348) < 1e-12);
  CHECK(rvm_prediction(zi, 700.0, 1) == rvm_prediction(zi, 700.0, -1));
  const auto ti = derive_invariants(testing::theta_datum());
  for (double T : {200.0, 800.0}) {
    CHECK(rvm_prediction(ti, T, 1) - rvm_prediction(ti, T, -1) ==
          Approx(6.0 / kPi * std::log(T)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rvm_prediction(zi, 2.0, 1), DomainError);
}

TEST_CASE("fractional decomposition") {
  const auto z = testing::zeta_datum();
  const double t = 500.0;
  const auto set = find_apoints(z, 2.0, 495.0, 505.0);
  const double C = 3.0;
  // Far from all points.
  const cplx far = fractional_decomposition_residual(z, 2.0, ComplexPoint(2.0, t), set);
  CHECK(std::abs(far) <= C * std::log(t));
  // Next to a point the pole cancels.
  for (const auto& p : set.points) {
    if (std::abs(p.gamma - t) > 1.0) continue;
    const ComplexPoint s(p.beta + 6e-4, p.gamma + 8e-4);
    CHECK(std::abs(fractional_decomposition_residual(z, 2.0, s, set)) <= C * std::log(t));
  }
  // Empty local sum: a window with no a-points in reach.
  APointSet empty = set;
  empty.points.clear();
  const ComplexPoint s(1.5, t);
  const cplx delta = delta_exact(z, s).value();
  const cplx direct = delta_log_deriv_exact(z, s) * delta / (delta - 2.0);
  CHECK(std::abs(fractional_decomposition_residual(z, 2.0, s, empty) - direct) <=
        1e-12 * std::abs(direct));
  CHECK_THROWS_AS(fractional_decomposition_residual(z, 2.0, ComplexPoint(0.5, 504.9), set),
                  InsufficientWindow);
}

TEST_CASE("CSV output") {
  const auto z = testing::zeta_datum();
  const auto set = find_apoints(z, 2.0, 20.0, 25.0);
  std::ostringstream os;
  write_apoints_csv(os, set, derive_invariants(z));
  const std::string text = os.str();
  CHECK(text.find("# datum=zeta") == 0);
  CHECK(text.find("k,gamma,beta,residual,newton_iters\n") != std::string::npos);
  CHECK(text.find("23.17494562575") != std::string::npos);
}

TEST_CASE("property: completeness against the contour count") {
  testing::Gen gen(2024);
  for (const char* name : {"zeta", "dirichlet-4", "dirichlet-5-odd", "zeta^2", "zeta^3",
                           "synthetic-theta"}) {
    const auto D = catalog_get(name).datum();
    const auto inv = derive_invariants(D);
    for (cplx a : {cplx(2, 0), cplx(0, 1), cplx(0.5, 0), cplx(-3, 0)}) {
      for (int w = 0; w < 5; ++w) {
        double lo = gen.uniform(inv.t0, 2000.0);
        double hi = lo + gen.uniform(1.0, 60.0);
        FindOptions opts;
        opts.certify = false;
        const auto set = find_apoints(D, a, lo, hi, opts);
        CHECK(long(set.size()) == count_argument_principle(D, a, default_contour(inv, a, lo, hi)));
      }
    }
  }
}

namespace {

// Log-log regression slope of the worst recentred beta offset per height band
// against t ell(t).
double beta_offset_slope(const FunctionalEquationDatum& D, cplx a, double& worst_scaled) {
  const auto inv = derive_invariants(D);
  std::vector<double> xs, ys;
  worst_scaled = 0.0;
  for (double T = 2 * inv.t0; T < 3000.0; T *= 1.6) {
    const auto set = find_apoints(D, a, T, T + 10.0);
    double worst = 0.0, t_at = T;
    for (const auto& p : set.points) {
      const double l = ell(inv, p.gamma);
      const double off = std::abs(p.beta - (0.5 - std::log(std::abs(a)) / l));
      worst_scaled = std::max(worst_scaled, off * p.gamma * l);
      if (off > worst) {
        worst = off;
        t_at = p.gamma;
      }
    }
    xs.push_back(std::log(t_at * ell(inv, t_at)));
    ys.push_back(std::log(worst));
  }
  const double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("property: beta offset decays like 1/(t log t)") {
  double C = 0.0;
  // Complex mu gives a 1/t correction to log|Delta|, so the bound is sharp here.
  const double k = beta_offset_slope(testing::theta_datum(), 2.0, C);
  MESSAGE("synthetic-theta slope " << k << ", C " << C);
  CHECK(k == Approx(-1.0).epsilon(0.15));
  CHECK(C < 50.0);
  // Real mu: the offset decays faster (about 1/(t^2 log t)); only the bound is checked.
  for (cplx a : {cplx(2, 0), cplx(-3, 0), cplx(0.5, 0)}) {
    const double kz = beta_offset_slope(testing::zeta_datum(), a, C);
    MESSAGE("zeta a=" << a.real() << " slope " << kz << ", C " << C);
    CHECK(kz < -0.85);
    CHECK(C < 5.0);
  }
}
}
