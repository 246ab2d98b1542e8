#pragma once

#include <cstddef>
#include <functional>

#include "dfactor/numeric.h"

namespace dfactor {

struct QuadratureResult {
  cplx value{};
  double error = 0.0;        // summed Kronrod-Gauss difference
  std::size_t intervals = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex-valued
/// function over [a, b]; the worst interval is bisected until the summed error
/// estimate is at most abs_tol or max_intervals is reached.
QuadratureResult integrate_gk15(const std::function<cplx(double)>& f, double a, double b,
                                double abs_tol, std::size_t max_intervals = 200000);

}  // namespace dfactor
