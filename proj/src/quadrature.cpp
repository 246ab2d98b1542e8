#include "dfactor/quadrature.h"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <queue>
#include <vector>

namespace dfactor {

namespace {

struct Piece {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<cplx(double)>& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  static const auto& xk = Kronrod::abscissa();
  static const auto& wk = Kronrod::weights();
  static const auto& wg = Gauss::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  // Kronrod abscissae are stored for x >= 0 starting at the centre; the Gauss
  // nodes are the odd-indexed ones.
  const cplx fc = f(c);
  cplx kr = wk[0] * fc;
  cplx ga = wg[0] * fc;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const cplx pair = f(c - h * xk[i]) + f(c + h * xk[i]);
    kr += wk[i] * pair;
    if (i % 2 == 0) ga += wg[i / 2] * pair;
  }
  kr *= h;
  ga *= h;
  return {a, b, kr, std::abs(kr - ga)};
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<cplx(double)>& f, double a, double b,
                                double abs_tol, std::size_t max_intervals) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Piece> heap;
  heap.push(gk15(f, a, b));
  double total_error = heap.top().error;
  while (total_error > abs_tol && heap.size() < max_intervals) {
    const Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval no longer divisible
    heap.pop();
    Piece left = gk15(f, worst.a, mid);
    Piece right = gk15(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  CompensatedSum value;
  double error = 0.0;
  out.intervals = heap.size();
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value.value();
  out.error = error;
  out.converged = error <= abs_tol;
  return out;
}

}  // namespace dfactor
