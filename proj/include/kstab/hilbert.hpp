#pragma once

// Hilbert function and Hilbert polynomial of a homogeneous ideal. The
// function is an exact dimension count per degree; the polynomial is an
// exact fit over a window of consecutive degrees, with the window start
// doubled until two consecutive fits agree (guards against pre-regularity
// samples) and every surplus sample validated.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kstab/fit.hpp"
#include "kstab/groebner.hpp"
#include "kstab/ideal.hpp"
#include "kstab/linalg.hpp"
#include "kstab/rational.hpp"
#include "kstab/unipoly.hpp"

namespace kstab {

inline long dim_degree_piece(int nv, long m) {
  if (m < 0) return 0;
  BigInt b = binomial(m + nv - 1, nv - 1);
  return static_cast<long>(b.get_si());
}

// dim_Q (R/I)_m. Monomial ideals count standard monomials; otherwise the
// dimension of I_m is the exact rank of the span of { x^beta * g }.
inline long hilbert_function(const Ideal& ideal, long m) {
  if (m < 0) return 0;
  const int nv = ideal.nv;
  const auto monos = monomials_of_degree(nv, static_cast<int>(m));
  if (ideal.is_zero_ideal()) return static_cast<long>(monos.size());

  if (ideal.is_monomial()) {
    long std_count = 0;
    for (const auto& a : monos) {
      bool in_ideal = false;
      for (const auto& g : ideal.gens)
        if (g.leading().first.divides(a)) {
          in_ideal = true;
          break;
        }
      if (!in_ideal) ++std_count;
    }
    return std_count;
  }

  std::map<Monomial, size_t, GrlexDesc> col;
  for (size_t i = 0; i < monos.size(); ++i) col.emplace(monos[i], i);

  QMatrix rows;
  for (const auto& g : ideal.gens) {
    const int dg = g.degree();
    if (dg > m) continue;
    for (const auto& beta : monomials_of_degree(nv, static_cast<int>(m) - dg)) {
      std::vector<Rational> row(monos.size(), Rational(0));
      for (const auto& [mon, c] : g.terms()) row[col.at(mon * beta)] = c;
      rows.push_back(std::move(row));
    }
  }
  return static_cast<long>(monos.size()) - qrank(std::move(rows));
}

struct HilbertData {
  UniPolyQ hilbert_poly;
  int n = 0;                 // deg hilbert_poly = dimension of the subscheme
  long d = 0;                // degree: n! * leading coefficient
  Rational mu;               // coefficient of m^(n-1), zero when n = 0
  long regularity_start = 0; // first window start where the fit stabilized
};

namespace detail {

// Samples hilbert-function style data f(m) at m0..m0+count-1 with caching.
template <typename F>
std::vector<std::pair<long, Rational>> sample_window(F&& f, std::map<long, Rational>& cache,
                                                     long m0, int count) {
  std::vector<std::pair<long, Rational>> out;
  out.reserve(static_cast<size_t>(count));
  for (long m = m0; m < m0 + count; ++m) {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, f(m)).first;
    out.emplace_back(m, it->second);
  }
  return out;
}

// Adaptive exact fit: degree bound deg_bound, window of deg_bound+3 samples
// (two surplus), m0 doubling until two consecutive window fits agree.
template <typename F>
std::pair<UniPolyQ, long> stable_fit(F&& f, int deg_bound, long cap, const std::string& what) {
  std::map<long, Rational> cache;
  const int count = deg_bound + 3;
  for (long m0 = 1; 2 * m0 + count - 1 <= cap; m0 *= 2) {
    UniPolyQ a, b;
    try {
      a = vandermonde_fit(sample_window(f, cache, m0, count), deg_bound);
      b = vandermonde_fit(sample_window(f, cache, 2 * m0, count), deg_bound);
    } catch (const FitError&) {
      continue;  // window still pre-regularity; double m0
    }
    if (a == b) return {a, m0};
  }
  throw FitError(what + ": no stable fit window with samples below m=" + std::to_string(cap));
}

}  // namespace detail

// cap: largest degree the sampler may be asked for (fit instability error
// beyond it).
inline HilbertData hilbert_data(const Ideal& ideal, long cap = 64) {
  const int deg_bound = ideal.nv - 1;
  auto [poly, m0] = detail::stable_fit(
      [&](long m) { return Rational(hilbert_function(ideal, m)); }, deg_bound, cap,
      "Hilbert fit instability");

  HilbertData out;
  out.hilbert_poly = poly;
  out.regularity_start = m0;
  if (poly.is_zero()) throw std::domain_error("zero Hilbert polynomial (empty subscheme)");
  out.n = poly.degree();
  Rational dd = poly.leading() * Rational(factorial(out.n));
  if (dd.get_den() != 1)
    throw std::domain_error("non-integral degree from Hilbert fit: " + rational_to_string(dd));
  out.d = static_cast<long>(dd.get_num().get_si());
  out.mu = out.n >= 1 ? poly.coeff(out.n - 1) : Rational(0);
  return out;
}

}  // namespace kstab
