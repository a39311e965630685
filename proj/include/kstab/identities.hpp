#pragma once

// Alternating binomial moment sum(j=0..n+1) (-1)^j C(n+1,j) (n+1-2j)^i,
// evaluated exactly. It vanishes for 0 <= i <= n and at i = n+2, and equals
// (n+1)! * 2^(n+1) at i = n+1; the convention 0^0 = 1 is required for i = 0.

#include <stdexcept>

#include "kstab/rational.hpp"

namespace kstab {

inline BigInt binom_identity(long n, long i) {
  if (n < 0 || i < 0) throw std::invalid_argument("binom_identity: negative argument");
  BigInt acc(0);
  for (long j = 0; j <= n + 1; ++j) {
    const BigInt base(n + 1 - 2 * j);
    BigInt term = binomial(n + 1, j) * ipow(base, i);  // ipow(0,0) = 1
    if (j % 2 == 1) term = -term;
    acc += term;
  }
  return acc;
}

}  // namespace kstab
