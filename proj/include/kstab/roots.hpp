#pragma once

// Univariate complex polynomial roots: Aberth-Ehrlich simultaneous iteration
// seeded deterministically on a circle of Cauchy-bound radius, followed by a
// Newton polish. Degrees here are tiny (fiber degree d, discriminants up to
// d(d-1)), so robustness and determinism matter more than asymptotics.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace kstab {

using cdouble = std::complex<double>;

// p(x) and p'(x) for coefficients c[0] + c[1] x + ... + c[n] x^n.
inline std::pair<cdouble, cdouble> horner2(const std::vector<cdouble>& c, cdouble x) {
  cdouble p = 0.0, dp = 0.0;
  for (size_t i = c.size(); i-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[i];
  }
  return {p, dp};
}

inline cdouble newton_polish(const std::vector<cdouble>& c, cdouble x, int iters = 24) {
  for (int it = 0; it < iters; ++it) {
    auto [p, dp] = horner2(c, x);
    if (p == cdouble(0.0)) return x;
    if (dp == cdouble(0.0)) break;
    const cdouble step = p / dp;
    x -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
  }
  return x;
}

// All n roots of a degree-n polynomial (leading coefficient must dominate
// rounding noise). Deterministic: no RNG, fixed initial configuration.
inline std::vector<cdouble> poly_roots(std::vector<cdouble> c) {
  while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {};
  if (n == 1) return {-c[0] / c[1]};

  // Cauchy bound; initial guesses on that circle, offset to break symmetry.
  double r = 0.0;
  for (int i = 0; i < n; ++i) r = std::max(r, std::abs(c[i] / c[n]));
  r = 1.0 + r;
  std::vector<cdouble> x(n);
  constexpr double kPi = 3.14159265358979323846;
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * kPi * (double(i) / n) + 0.7364;
    x[i] = std::polar(0.5 * r + 0.5, th);
  }

  for (int it = 0; it < 120; ++it) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      auto [p, dp] = horner2(c, x[i]);
      if (p == cdouble(0.0)) continue;
      cdouble repel = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          const cdouble d = x[i] - x[j];
          if (std::abs(d) > 0.0) repel += 1.0 / d;
        }
      const cdouble nr = p / dp;
      const cdouble denom = 1.0 - nr * repel;
      const cdouble step = (std::abs(denom) > 1e-300) ? nr / denom : nr;
      x[i] -= step;
      moved = std::max(moved, std::abs(step) / (1.0 + std::abs(x[i])));
    }
    if (moved < 1e-14) break;
  }
  for (auto& xi : x) xi = newton_polish(c, xi);
  std::sort(x.begin(), x.end(), [](cdouble a, cdouble b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return x;
}

// Square complex linear solve (Gaussian elimination, partial pivoting);
// used to interpolate discriminant coefficients from point values.
inline std::vector<cdouble> csolve(std::vector<std::vector<cdouble>> a, std::vector<cdouble> b) {
  const size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) throw std::domain_error("singular linear system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const cdouble m = a[r][col] / a[col][col];
      if (m == cdouble(0.0)) continue;
      for (size_t k = col; k < n; ++k) a[r][k] -= m * a[col][k];
      b[r] -= m * b[col];
    }
  }
  std::vector<cdouble> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace kstab
