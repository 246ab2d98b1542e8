#pragma once

#include <vector>

#include "dfactor/numeric.h"

namespace dfactor {

inline constexpr int kMaxCharacterModulus = 100;

/// Dirichlet character chi_q(index, .) in Conrey labelling, stored as a value
/// table over residues 0..q-1.
struct DirichletCharacter {
  int q = 1;
  int index = 1;
  std::vector<cplx> values;
  int conductor = 1;
  bool odd = false;

  bool principal() const { return index % q == 1 % q; }
  bool primitive() const { return conductor == q; }
  cplx operator()(long n) const;
};

/// Character table for chi_q(index, .). Throws BadCharacter unless
/// 1 <= q <= 100, 1 <= index <= q and gcd(index, q) = 1.
DirichletCharacter conrey_character(int q, int index);

/// tau(chi) = sum chi(m) exp(2 pi i m / q).
cplx gauss_sum(const DirichletCharacter& chi);

}  // namespace dfactor
