#pragma once

// Independent brute-force oracle for weight sums and Hilbert counts of
// MONOMIAL ideals: plain exponent-vector enumeration, no library machinery.
// Kept deliberately naive (valid for small m only) so it cannot share a bug
// with the implementation under test.

#include <cstddef>
#include <vector>

namespace oracle {

using Expo = std::vector<int>;

inline void enum_rec(int nv, int idx, int rem, Expo& cur, std::vector<Expo>& out) {
  if (idx == nv - 1) {
    cur[idx] = rem;
    out.push_back(cur);
    cur[idx] = 0;
    return;
  }
  for (int k = 0; k <= rem; ++k) {
    cur[idx] = k;
    enum_rec(nv, idx + 1, rem - k, cur, out);
  }
  cur[idx] = 0;
}

inline std::vector<Expo> all_exponents(int nv, int degree) {
  std::vector<Expo> out;
  Expo cur(nv, 0);
  enum_rec(nv, 0, degree, cur, out);
  return out;
}

inline bool divisible(const Expo& a, const Expo& gen) {
  for (size_t i = 0; i < a.size(); ++i)
    if (gen[i] > a[i]) return false;
  return true;
}

// Standard monomials of degree m for the monomial ideal spanned by gens.
inline std::vector<Expo> standard_monomials(int nv, int m, const std::vector<Expo>& gens) {
  std::vector<Expo> out;
  for (const auto& a : all_exponents(nv, m)) {
    bool inside = false;
    for (const auto& g : gens)
      if (divisible(a, g)) {
        inside = true;
        break;
      }
    if (!inside) out.push_back(a);
  }
  return out;
}

inline long hilbert_count(int nv, int m, const std::vector<Expo>& gens) {
  return static_cast<long>(standard_monomials(nv, m, gens).size());
}

// Section-dual weight of the degree-m quotient: minus the total
// lambda-weight of the standard monomial basis.
inline long dual_weight(int nv, int m, const std::vector<Expo>& gens, const std::vector<long>& lam) {
  long total = 0;
  for (const auto& a : standard_monomials(nv, m, gens))
    for (size_t i = 0; i < a.size(); ++i) total += lam[i] * a[i];
  return -total;
}

}  // namespace oracle
