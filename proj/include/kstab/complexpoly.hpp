#pragma once

// Floating-point trivariate polynomials: the bridge from exact MultiPoly
// input to the quadrature substrate. Supports evaluation, gradients, the
// one-parameter-subgroup translate f |-> f o lambda(s)^{-1} (normalized so
// the largest coefficient has modulus 1), and linear coordinate changes
// (used when no coordinate point is a valid projection center).

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "kstab/ideal.hpp"
#include "kstab/multipoly.hpp"

namespace kstab {

using cdouble = std::complex<double>;

struct CTerm {
  std::array<int, 3> e;
  cdouble c;
};

class CPoly3 {
 public:
  CPoly3() = default;
  explicit CPoly3(std::vector<CTerm> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_) deg_ = std::max(deg_, t.e[0] + t.e[1] + t.e[2]);
  }

  static CPoly3 from_exact(const MultiPoly& f) {
    if (f.nvars() != 3) throw std::invalid_argument("expected a polynomial in 3 variables");
    std::vector<CTerm> terms;
    for (const auto& [m, c] : f.terms())
      terms.push_back({{m.e[0], m.e[1], m.e[2]}, cdouble(c.get_d(), 0.0)});
    return CPoly3(std::move(terms));
  }

  int degree() const { return deg_; }
  const std::vector<CTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cdouble eval(const std::array<cdouble, 3>& z) const {
    cdouble acc = 0.0;
    for (const auto& t : terms_) acc += t.c * ipow(z[0], t.e[0]) * ipow(z[1], t.e[1]) * ipow(z[2], t.e[2]);
    return acc;
  }

  std::array<cdouble, 3> grad(const std::array<cdouble, 3>& z) const {
    std::array<cdouble, 3> g{0.0, 0.0, 0.0};
    for (const auto& t : terms_) {
      for (int v = 0; v < 3; ++v) {
        if (t.e[v] == 0) continue;
        cdouble m = t.c * double(t.e[v]) * ipow(z[v], t.e[v] - 1);
        for (int w = 0; w < 3; ++w)
          if (w != v) m *= ipow(z[w], t.e[w]);
        g[v] += m;
      }
    }
    return g;
  }

  // Coefficient of the pure power z_k^degree (the fiber-leading coefficient
  // of the projection away from coordinate point k).
  cdouble pure_power_coeff(int k) const {
    for (const auto& t : terms_)
      if (t.e[k] == deg_) return t.c;
    return 0.0;
  }

  double coeff_l2() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::norm(t.c);
    return std::sqrt(s);
  }

  double coeff_max() const {
    double s = 0.0;
    for (const auto& t : terms_) s = std::max(s, std::abs(t.c));
    return s;
  }

  CPoly3 scaled(cdouble a) const {
    std::vector<CTerm> out = terms_;
    for (auto& t : out) t.c *= a;
    return CPoly3(std::move(out));
  }

  // f o lambda(s)^{-1} with t = e^{s/2}: coefficient of z^alpha picks up
  // e^{-s<m,alpha>/2}. Normalized by the maximal weight present so the
  // largest factor is exactly 1 and the limit s -> -inf is the initial form.
  CPoly3 lambda_translate(const OneParamSubgroup& lam, double s) const {
    if (lam.nvars() != 3) throw std::invalid_argument("lambda arity mismatch");
    long wmax = 0;
    bool got = false;
    for (const auto& t : terms_) {
      const long w = lam.w[0] * t.e[0] + lam.w[1] * t.e[1] + lam.w[2] * t.e[2];
      if (!got || w > wmax) wmax = w, got = true;
    }
    std::vector<CTerm> out = terms_;
    for (auto& t : out) {
      const long w = lam.w[0] * t.e[0] + lam.w[1] * t.e[1] + lam.w[2] * t.e[2];
      t.c *= std::exp(-s * double(w - wmax) / 2.0);
    }
    return CPoly3(std::move(out));
  }

  // f(U w): expand in the new coordinates w. U is applied as z = U w.
  CPoly3 substituted(const std::array<std::array<cdouble, 3>, 3>& U) const {
    std::map<std::array<int, 3>, cdouble> acc;
    for (const auto& t : terms_) {
      // product over variables of (row_v . w)^{e_v}
      std::map<std::array<int, 3>, cdouble> prod;
      prod[{0, 0, 0}] = t.c;
      for (int v = 0; v < 3; ++v)
        for (int rep = 0; rep < t.e[v]; ++rep) {
          std::map<std::array<int, 3>, cdouble> next;
          for (const auto& [e, c] : prod)
            for (int w = 0; w < 3; ++w) {
              if (U[v][w] == cdouble(0.0)) continue;
              std::array<int, 3> e2 = e;
              ++e2[w];
              next[e2] += c * U[v][w];
            }
          prod = std::move(next);
        }
      for (const auto& [e, c] : prod) acc[e] += c;
    }
    std::vector<CTerm> out;
    for (const auto& [e, c] : acc)
      if (std::abs(c) > 0.0) out.push_back({e, c});
    return CPoly3(std::move(out));
  }

 private:
  static cdouble ipow(cdouble b, int k) {
    cdouble r = 1.0;
    for (int i = 0; i < k; ++i) r *= b;
    return r;
  }

  int deg_ = 0;
  std::vector<CTerm> terms_;
};

}  // namespace kstab
