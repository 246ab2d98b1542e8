#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace dfactor {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Neumaier summation, applied to real and imaginary parts independently.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(cplx x) {
    add(re_, cre_, x.real());
    add(im_, cim_, x.imag());
    return *this;
  }
  CompensatedSum& operator-=(cplx x) { return *this += -x; }
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

// x mod 2pi into (-pi, pi], using a two-word 2pi so large phases keep their
// low-order bits.
inline double reduce_phase(double x) {
  constexpr double hi = 6.283185307179586;
  constexpr double lo = 2.4492935982947064e-16;
  const double k = std::nearbyint(x / kTwoPi);
  double r = std::fma(-k, hi, x);
  r = std::fma(-k, lo, r);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

// exp(z) with the imaginary part reduced first.
inline cplx exp_reduced(cplx z) {
  return std::polar(std::exp(z.real()), reduce_phase(z.imag()));
}

// exp(w) - 1 without cancellation for small w.
inline cplx cexpm1(cplx w) {
  const double em1 = std::expm1(w.real());
  const double s = std::sin(0.5 * w.imag());
  return {em1 * std::cos(w.imag()) - 2.0 * s * s, std::exp(w.real()) * std::sin(w.imag())};
}

// (exp(z) - 1) / z, equal to 1 at z = 0.
inline cplx expm1c(cplx z) {
  if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z / 6.0);
  return cexpm1(z) / z;
}

}  // namespace dfactor
