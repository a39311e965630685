#pragma once

// Monomials as exponent vectors. The canonical term order everywhere is
// graded lexicographic with x0 > x1 > ... (degree first, then lex), which
// keeps every container iteration and printed basis deterministic.

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kstab {

struct Monomial {
  std::vector<int> e;

  Monomial() = default;
  explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}
  static Monomial one(int nv) { return Monomial(std::vector<int>(nv, 0)); }

  int nvars() const { return static_cast<int>(e.size()); }

  int degree() const {
    int s = 0;
    for (int v : e) s += v;
    return s;
  }

  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& m) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& m) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
    return r;
  }

  // Requires d | *this.
  Monomial quotient(const Monomial& d) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) {
      r.e[i] -= d.e[i];
      if (r.e[i] < 0) throw std::logic_error("monomial quotient with non-divisor");
    }
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i)
      if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
    return r;
  }

  bool coprime(const Monomial& b) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0 && b.e[i] > 0) return false;
    return true;
  }

  bool squarefree() const {
    for (int v : e)
      if (v > 1) return false;
    return true;
  }

  // <lambda, alpha>; lambda.size() must equal nvars().
  long weight(const std::vector<long>& lambda) const {
    long w = 0;
    for (size_t i = 0; i < e.size(); ++i) w += lambda[i] * e[i];
    return w;
  }

  bool operator==(const Monomial& m) const { return e == m.e; }
};

// true when a > b in graded lex.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

// Map comparator putting the grlex-largest monomial first.
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_greater(a, b); }
};

inline std::vector<std::string> variable_names(int nv) {
  std::vector<std::string> names;
  if (nv <= 3) {
    const char* xyz[] = {"x", "y", "z"};
    for (int i = 0; i < nv; ++i) names.push_back(xyz[i]);
  } else {
    for (int i = 0; i < nv; ++i) names.push_back("x" + std::to_string(i));
  }
  return names;
}

inline std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (int i = 0; i < m.nvars(); ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  return out.empty() ? "1" : out;
}

// All monomials of total degree m in nv variables, grlex-descending.
inline std::vector<Monomial> monomials_of_degree(int nv, int m) {
  std::vector<Monomial> out;
  std::vector<int> cur(nv, 0);
  // Recursive lexicographic enumeration: assign the first variable the
  // largest exponent first, which yields grlex-descending order per degree.
  auto rec = [&](auto&& self, int idx, int rem) -> void {
    if (idx == nv - 1) {
      cur[idx] = rem;
      out.emplace_back(cur);
      return;
    }
    for (int k = rem; k >= 0; --k) {
      cur[idx] = k;
      self(self, idx + 1, rem - k);
    }
    cur[idx] = 0;
  };
  if (nv <= 0) throw std::invalid_argument("monomials_of_degree: nv must be positive");
  if (m < 0) return out;
  rec(rec, 0, m);
  return out;
}

}  // namespace kstab
