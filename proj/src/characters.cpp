#include "dfactor/characters.h"

#include <fmt/format.h>
#include <numeric>

#include "dfactor/errors.h"

namespace dfactor {

namespace {

struct PrimePower {
  int p;
  int e;
  int pe;
};

std::vector<PrimePower> factor(int n) {
  std::vector<PrimePower> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.e;
      pp.pe *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

int multiplicative_order(int g, int m) {
  int k = 1;
  for (long x = g % m; x != 1; x = x * g % m) ++k;
  return k;
}

// Conrey's generator for odd p: least primitive root mod p that is also one
// mod p^2.
int conrey_generator(int p) {
  for (int g = 2;; ++g) {
    if (std::gcd(g, p) != 1 || multiplicative_order(g, p) != p - 1) continue;
    if (multiplicative_order(g, p * p) == p * (p - 1)) return g;
  }
}

// Discrete log of n base g modulo m (table scan; m <= 100).
int discrete_log(int g, int n, int m) {
  long x = 1;
  for (int k = 0; k < m; ++k) {
    if (x == n % m) return k;
    x = x * g % m;
  }
  return -1;
}

// Exponent (as a fraction of a full turn) of chi_{p^e}(m, n).
double local_phase(const PrimePower& pp, int m, int n) {
  m %= pp.pe;
  n %= pp.pe;
  if (pp.p != 2) {
    const int g = conrey_generator(pp.p);
    const int phi = pp.pe / pp.p * (pp.p - 1);
    const long a = discrete_log(g, m, pp.pe);
    const long b = discrete_log(g, n, pp.pe);
    return double(a * b % phi) / phi;
  }
  if (pp.e == 1) return 0.0;
  const int em = (m % 4 == 1) ? 1 : -1;
  const int en = (n % 4 == 1) ? 1 : -1;
  double phase = (1 - em) * (1 - en) / 8.0;
  if (pp.e >= 3) {
    const int mm = em == 1 ? m : pp.pe - m;
    const int nn = en == 1 ? n : pp.pe - n;
    const long a = discrete_log(5, mm, pp.pe);
    const long b = discrete_log(5, nn, pp.pe);
    const long mod = pp.pe / 4;
    phase += double(a * b % mod) / mod;
  }
  return phase;
}

int conductor_of(const DirichletCharacter& chi) {
  for (int d = 1; d < chi.q; ++d) {
    if (chi.q % d) continue;
    bool induced = true;
    for (int n = 1; n < chi.q && induced; ++n) {
      if (std::gcd(n, chi.q) != 1 || n % d != 1 % d) continue;
      if (std::abs(chi.values[n] - 1.0) > 1e-9) induced = false;
    }
    if (induced) return d;
  }
  return chi.q;
}

}  // namespace

cplx DirichletCharacter::operator()(long n) const {
  const long r = ((n % q) + q) % q;
  return values[r];
}

DirichletCharacter conrey_character(int q, int index) {
  if (q < 1 || q > kMaxCharacterModulus) {
    throw BadCharacter(fmt::format("modulus {} outside 1..{}", q, kMaxCharacterModulus));
  }
  if (index < 1 || index > q || std::gcd(index, q) != 1) {
    throw BadCharacter(fmt::format("index {} is not a unit modulo {}", index, q));
  }
  DirichletCharacter chi;
  chi.q = q;
  chi.index = index;
  chi.values.assign(q, cplx(0.0, 0.0));
  const auto pps = factor(q);
  for (int n = 0; n < q; ++n) {
    if (std::gcd(n, q) != 1) continue;
    double phase = 0.0;
    for (const auto& pp : pps) phase += local_phase(pp, index, n);
    phase -= std::floor(phase);
    // Exact values at quarter turns keep real characters real.
    const double quarter = phase * 4.0;
    if (std::abs(quarter - std::nearbyint(quarter)) < 1e-12) {
      static const cplx units[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      chi.values[n] = units[int(std::nearbyint(quarter)) % 4];
    } else {
      chi.values[n] = std::polar(1.0, kTwoPi * phase);
    }
  }
  if (q == 1) chi.values[0] = 1.0;
  chi.odd = q > 2 && std::abs(chi.values[q - 1] + 1.0) < 1e-9;
  chi.conductor = conductor_of(chi);
  return chi;
}

cplx gauss_sum(const DirichletCharacter& chi) {
  CompensatedSum sum;
  for (int m = 1; m <= chi.q; ++m) {
    sum += chi(m) * std::polar(1.0, kTwoPi * m / chi.q);
  }
  return sum.value();
}

}  // namespace dfactor
