#pragma once

// Exact dense linear algebra over Rational, at the small sizes this project
// needs (graded pieces of desk-scale ideals, Vandermonde systems). Plain
// fraction arithmetic with first-nonzero pivoting keeps results and row
// choices deterministic.

#include <stdexcept>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

using QMatrix = std::vector<std::vector<Rational>>;

// Rank by forward elimination. Mutates a copy of the input.
inline int qrank(QMatrix a) {
  if (a.empty()) return 0;
  const size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

// Solves the square system a x = b exactly. Throws on singular input.
inline std::vector<Rational> qsolve(QMatrix a, std::vector<Rational> b) {
  const size_t n = a.size();
  if (n == 0 || a[0].size() != n || b.size() != n)
    throw std::invalid_argument("qsolve expects a square system");
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("singular linear system");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    const Rational inv = Rational(1) / a[c][c];
    for (size_t j = c; j < n; ++j) a[c][j] *= inv;
    b[c] *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  return b;
}

}  // namespace kstab
