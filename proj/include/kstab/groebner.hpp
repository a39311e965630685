#pragma once

// Initial forms and initial ideals for the degeneration of a homogeneous
// ideal under a diagonal one-parameter subgroup. The term order is
// "lambda-weight first, graded-lex tiebreak"; on homogeneous input that is a
// valid term order degree by degree (every polynomial the algorithm touches
// is homogeneous, so only same-degree monomials are ever compared), and a
// Groebner basis under it yields in_lambda(I) via termwise initial forms.
//
// Convention: the initial form keeps the terms of MAXIMAL lambda-weight,
// matching the limit cycle lim_{t->0} lambda(t) . V(I).

#include <algorithm>
#include <list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kstab/ideal.hpp"
#include "kstab/multipoly.hpp"

namespace kstab {

// a > b under the weighted order.
inline bool weighted_greater(const Monomial& a, const Monomial& b, const OneParamSubgroup& lam) {
  const long wa = lam.weight(a), wb = lam.weight(b);
  if (wa != wb) return wa > wb;
  return grlex_greater(a, b);
}

inline const std::pair<const Monomial, Rational>& weighted_leading(const MultiPoly& f,
                                                                   const OneParamSubgroup& lam) {
  if (f.is_zero()) throw std::logic_error("leading term of zero polynomial");
  auto best = f.terms().begin();
  for (auto it = std::next(f.terms().begin()); it != f.terms().end(); ++it)
    if (weighted_greater(it->first, best->first, lam)) best = it;
  return *best;
}

// Sum of the terms of maximal lambda-weight.
inline MultiPoly initial_form(const MultiPoly& f, const OneParamSubgroup& lam) {
  if (f.is_zero()) return f;
  long best = 0;
  bool got = false;
  for (const auto& [m, c] : f.terms()) {
    const long w = lam.weight(m);
    if (!got || w > best) {
      best = w;
      got = true;
    }
  }
  MultiPoly out(f.nvars());
  for (const auto& [m, c] : f.terms())
    if (lam.weight(m) == best) out.add_term(m, c);
  return out;
}

// Full reduction of f modulo basis: repeatedly cancels the weighted-largest
// reducible term. Homogeneity keeps every intermediate in one degree, so the
// loop terminates.
inline MultiPoly normal_form(MultiPoly f, const std::vector<MultiPoly>& basis,
                             const OneParamSubgroup& lam) {
  MultiPoly out(f.nvars());
  while (!f.is_zero()) {
    // weighted-largest term of f
    auto lead = f.terms().begin();
    for (auto it = std::next(f.terms().begin()); it != f.terms().end(); ++it)
      if (weighted_greater(it->first, lead->first, lam)) lead = it;
    const Monomial t = lead->first;
    const Rational c = lead->second;

    bool reduced = false;
    for (const auto& g : basis) {
      const auto& lg = weighted_leading(g, lam);
      if (!lg.first.divides(t)) continue;
      f -= g.times_term(t.quotient(lg.first), c / lg.second);
      reduced = true;
      break;
    }
    if (!reduced) {
      out.add_term(t, c);
      MultiPoly tm = MultiPoly::term(f.nvars(), t, c);
      f -= tm;
    }
  }
  return out;
}

// Buchberger with the coprime-leading-term criterion, followed by
// inter-reduction to the reduced (monic, tail-reduced, sorted) basis, which
// is canonical for the order and independent of generator order.
inline std::vector<MultiPoly> buchberger(const Ideal& ideal, const OneParamSubgroup& lam) {
  if (lam.nvars() != ideal.nv) throw std::invalid_argument("lambda arity mismatch");
  std::vector<MultiPoly> basis;
  for (const auto& g : ideal.gens) {
    MultiPoly r = normal_form(g, basis, lam);
    if (!r.is_zero()) basis.push_back(r);
  }

  std::list<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const auto& li = weighted_leading(basis[i], lam);
    const auto& lj = weighted_leading(basis[j], lam);
    if (li.first.coprime(lj.first)) continue;

    const Monomial l = Monomial::lcm(li.first, lj.first);
    MultiPoly s = basis[i].times_term(l.quotient(li.first), Rational(1) / li.second) -
                  basis[j].times_term(l.quotient(lj.first), Rational(1) / lj.second);
    MultiPoly r = normal_form(std::move(s), basis, lam);
    if (r.is_zero()) continue;
    const size_t k = basis.size();
    basis.push_back(std::move(r));
    for (size_t t = 0; t < k; ++t) pairs.emplace_back(t, k);
  }

  // Minimalize: drop elements whose leading monomial is divisible by another
  // leading monomial.
  std::vector<MultiPoly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    const auto& li = weighted_leading(basis[i], lam);
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& lj = weighted_leading(basis[j], lam);
      if (lj.first == li.first) {
        redundant = j < i;  // keep the first representative
      } else if (lj.first.divides(li.first)) {
        redundant = true;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  // Tail-reduce each element against the others and normalize to monic.
  std::vector<MultiPoly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MultiPoly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    MultiPoly r = normal_form(minimal[i], others, lam);
    if (r.is_zero()) continue;
    reduced.push_back(r * (Rational(1) / weighted_leading(r, lam).second));
  }

  std::sort(reduced.begin(), reduced.end(), [&](const MultiPoly& a, const MultiPoly& b) {
    return weighted_greater(weighted_leading(b, lam).first, weighted_leading(a, lam).first, lam);
  });
  return reduced;
}

// in_lambda(I): termwise initial forms of a Groebner basis under the refined
// order. Principal ideals short-circuit (the initial form of the single
// generator). The result is generated by lambda-isobaric polynomials.
inline Ideal initial_ideal(const Ideal& ideal, const OneParamSubgroup& lam) {
  if (lam.nvars() != ideal.nv) throw std::invalid_argument("lambda arity mismatch");
  if (ideal.is_zero_ideal()) return ideal;
  std::vector<MultiPoly> src;
  if (ideal.gens.size() == 1) {
    src = ideal.gens;
  } else {
    src = buchberger(ideal, lam);
  }
  std::vector<MultiPoly> init;
  init.reserve(src.size());
  for (const auto& g : src) {
    MultiPoly f = initial_form(g, lam);
    init.push_back(f * (Rational(1) / weighted_leading(f, lam).second));  // monic
  }
  return Ideal(ideal.nv, std::move(init));
}

}  // namespace kstab
