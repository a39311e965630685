#pragma once

// Homogeneous ideals in Q[x0..x_{nv-1}] and diagonal one-parameter subgroups
// of SL, given by integer weights summing to zero.

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "kstab/multipoly.hpp"

namespace kstab {

struct OneParamSubgroup {
  std::vector<long> w;

  OneParamSubgroup() = default;
  explicit OneParamSubgroup(std::vector<long> weights) : w(std::move(weights)) {
    if (w.empty()) throw std::invalid_argument("empty weight vector");
    long s = 0;
    for (long v : w) s += v;
    if (s != 0)
      throw std::invalid_argument("lambda weights must sum to zero (got sum " + std::to_string(s) +
                                  "); re-center the weights explicitly");
  }

  int nvars() const { return static_cast<int>(w.size()); }
  bool is_trivial() const {
    for (long v : w)
      if (v != 0) return false;
    return true;
  }
  OneParamSubgroup negated() const {
    OneParamSubgroup r;
    r.w = w;
    for (long& v : r.w) v = -v;
    return r;
  }
  long weight(const Monomial& m) const { return m.weight(w); }
};

// Generators are kept nonzero, homogeneous, in the order given.
struct Ideal {
  int nv = 0;
  std::vector<MultiPoly> gens;

  Ideal() = default;
  Ideal(int nvars, std::vector<MultiPoly> generators) : nv(nvars), gens(std::move(generators)) {
    for (const auto& g : gens) {
      if (g.nvars() != nv) throw std::invalid_argument("generator arity mismatch");
      if (g.is_zero()) throw std::invalid_argument("zero generator");
      if (!g.is_homogeneous()) throw std::invalid_argument("inhomogeneous generator: " + g.to_string());
    }
  }

  bool is_zero_ideal() const { return gens.empty(); }

  bool is_monomial() const {
    for (const auto& g : gens)
      if (!g.is_monomial()) return false;
    return true;
  }

  std::vector<std::string> generator_strings() const {
    std::vector<std::string> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(g.to_string());
    return out;
  }
};

}  // namespace kstab
