#pragma once

// Exact expansion of w(m) / (m * p(m)) in powers of 1/m. Substituting
// u = 1/m turns the ratio into u^(deg p + 1 - deg w) * w~(u) / p~(u) with
// reversed-coefficient polynomials w~, p~ and p~(0) != 0, so the asymptotic
// coefficients come out of one formal power-series division.

#include <stdexcept>
#include <vector>

#include "kstab/rational.hpp"
#include "kstab/unipoly.hpp"

namespace kstab {

// Returns F_0..F_order with w(m)/(m p(m)) = sum_k F_k m^{-k} + O(m^{-order-1}).
// Requires deg w <= deg p + 1 and p != 0.
inline std::vector<Rational> expand_ratio(const UniPolyQ& w, const UniPolyQ& p, int order) {
  if (order < 0) throw std::invalid_argument("expand_ratio: negative order");
  if (p.is_zero()) throw std::domain_error("expand_ratio: zero p");
  const int dw = w.degree(), dp = p.degree();
  if (dw > dp + 1) throw std::domain_error("expand_ratio: degree mismatch (deg w > deg p + 1)");

  std::vector<Rational> out(static_cast<size_t>(order) + 1, Rational(0));
  if (w.is_zero()) return out;

  const int shift = dp + 1 - dw;  // power of u in front of the series quotient
  const int terms = order - shift + 1;
  if (terms <= 0) return out;

  // Reversed coefficients: w~[k] = w[dw-k], p~[k] = p[dp-k] (zero past the end).
  auto wrev = [&](int k) { return k <= dw ? w.coeff(dw - k) : Rational(0); };
  auto prev = [&](int k) { return k <= dp ? p.coeff(dp - k) : Rational(0); };

  std::vector<Rational> q(static_cast<size_t>(terms));
  const Rational lead = prev(0);  // = leading coefficient of p, nonzero
  for (int k = 0; k < terms; ++k) {
    Rational acc = wrev(k);
    for (int j = 1; j <= k; ++j) acc -= prev(j) * q[static_cast<size_t>(k - j)];
    q[static_cast<size_t>(k)] = acc / lead;
  }
  for (int k = 0; k < terms; ++k) out[static_cast<size_t>(k + shift)] = q[static_cast<size_t>(k)];
  return out;
}

}  // namespace kstab
