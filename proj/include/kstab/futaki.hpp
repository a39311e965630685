#pragma once

// Weight polynomial of the flat limit and the generalized Futaki invariant.
//
// For the limit J = in_lambda(I), the degree-m quotient (R/J)_m splits into
// lambda-weight classes (J is generated by isobaric polynomials), and the
// total weight of the induced action is sum_w w * dim (R/J)_{m,w}. The
// section-dual convention records w_lambda(m) = -(that sum); with
// P = Hilbert polynomial of J,
//   w_lambda(m) / (m P(m)) = F0 + F1/m + O(1/m^2)
// and F1 is the generalized Futaki invariant of the degeneration.

#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kstab/groebner.hpp"
#include "kstab/hilbert.hpp"
#include "kstab/ideal.hpp"
#include "kstab/linalg.hpp"
#include "kstab/series.hpp"

namespace kstab {

enum class WeightSign { dual, function };

inline const char* weight_sign_name(WeightSign s) {
  return s == WeightSign::dual ? "dual" : "function";
}

struct WeightPolynomial {
  UniPolyQ w;
  long regularity_start = 0;
  WeightSign sign = WeightSign::dual;
};

namespace detail {

// Total lambda-weight of a standard basis of (R/J)_m, exact. J must be
// generated by isobaric polynomials (initial ideals always are).
inline long quotient_weight(const Ideal& J, const OneParamSubgroup& lam, long m) {
  const int nv = J.nv;
  const auto monos = monomials_of_degree(nv, static_cast<int>(m));

  if (J.is_zero_ideal() || J.is_monomial()) {
    long total = 0;
    for (const auto& a : monos) {
      bool inside = false;
      for (const auto& g : J.gens)
        if (g.leading().first.divides(a)) {
          inside = true;
          break;
        }
      if (!inside) total += lam.weight(a);
    }
    return total;
  }

  // Column indices per weight class.
  struct Class {
    std::map<Monomial, size_t, GrlexDesc> col;
    QMatrix rows;
  };
  std::map<long, Class> classes;
  for (const auto& a : monos) {
    Class& cl = classes[lam.weight(a)];
    cl.col.emplace(a, cl.col.size());
  }

  for (const auto& g : J.gens) {
    const int dg = g.degree();
    if (dg > m) continue;
    long wg = lam.weight(g.terms().begin()->first);
    for (const auto& [mon, c] : g.terms())
      if (lam.weight(mon) != wg)
        throw std::logic_error("limit ideal generator is not isobaric: " + g.to_string());
    for (const auto& beta : monomials_of_degree(nv, static_cast<int>(m) - dg)) {
      Class& cl = classes.at(wg + lam.weight(beta));
      std::vector<Rational> row(cl.col.size(), Rational(0));
      for (const auto& [mon, c] : g.terms()) row[cl.col.at(mon * beta)] = c;
      cl.rows.push_back(std::move(row));
    }
  }

  long total = 0;
  for (auto& [w, cl] : classes) {
    const long dim = static_cast<long>(cl.col.size()) - qrank(std::move(cl.rows));
    total += w * dim;
  }
  return total;
}

}  // namespace detail

// Exact weight polynomial of the flat limit of I under lambda. The fit uses
// the same stabilized-window scheme as hilbert_data, with degree bound
// nv (= ambient dimension + 1 >= n + 1).
inline WeightPolynomial weight_polynomial_of_limit(const Ideal& J, const OneParamSubgroup& lam,
                                                   WeightSign sign, long cap = 64) {
  const int deg_bound = J.nv;  // w has degree at most n + 1 <= (nv - 1) + 1
  const long flip = (sign == WeightSign::dual) ? -1 : 1;
  auto [poly, m0] = detail::stable_fit(
      [&](long m) { return Rational(flip * detail::quotient_weight(J, lam, m)); }, deg_bound, cap,
      "weight fit instability");
  return WeightPolynomial{poly, m0, sign};
}

inline WeightPolynomial weight_polynomial(const Ideal& ideal, const OneParamSubgroup& lam,
                                          WeightSign sign = WeightSign::dual) {
  return weight_polynomial_of_limit(initial_ideal(ideal, lam), lam, sign);
}

// Radicality of a monomial ideal presented by minimal generators: radical
// iff every generator is squarefree. Non-monomial limits return nullopt.
inline std::optional<bool> monomial_ideal_reduced(const Ideal& J) {
  if (J.is_zero_ideal()) return true;
  if (!J.is_monomial()) return std::nullopt;
  for (const auto& g : J.gens)
    if (!g.leading().first.squarefree()) return false;
  return true;
}

inline std::string ideal_hash(const Ideal& ideal) {
  // FNV-1a 64 over the canonical generator strings; stable across runs.
  unsigned long long h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= 1099511628211ull;
  };
  mix(std::to_string(ideal.nv));
  for (const auto& g : ideal.generator_strings()) mix(g);
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", h);
  return std::string(buf);
}

struct FutakiReport {
  std::string input_hash;
  std::vector<long> lambda;
  Ideal limit;
  HilbertData hilbert;       // of the flat limit (equals the source by flatness)
  WeightPolynomial weight;
  Rational F0;
  Rational F1;
  std::optional<bool> limit_reduced;
};

inline FutakiReport donaldson_futaki(const Ideal& ideal, const OneParamSubgroup& lam,
                                     WeightSign sign = WeightSign::dual) {
  if (lam.nvars() != ideal.nv) throw std::invalid_argument("lambda arity mismatch");
  FutakiReport r;
  r.input_hash = ideal_hash(ideal);
  r.lambda = lam.w;
  r.limit = initial_ideal(ideal, lam);
  r.hilbert = hilbert_data(r.limit);
  r.weight = weight_polynomial_of_limit(r.limit, lam, sign);
  auto coeffs = expand_ratio(r.weight.w, r.hilbert.hilbert_poly, 1);
  r.F0 = coeffs[0];
  r.F1 = coeffs[1];
  r.limit_reduced = monomial_ideal_reduced(r.limit);
  return r;
}

}  // namespace kstab
