#pragma once

// Multivariate polynomials over Rational with deterministic term order
// (grlex-descending). Terms never hold a zero coefficient.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kstab/monomial.hpp"
#include "kstab/rational.hpp"

namespace kstab {

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDesc>;

  MultiPoly() : nv_(0) {}
  explicit MultiPoly(int nv) : nv_(nv) {}

  int nvars() const { return nv_; }
  bool is_zero() const { return terms_.empty(); }
  size_t nterms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.nvars() != nv_) throw std::invalid_argument("term arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  static MultiPoly term(int nv, const Monomial& m, const Rational& c) {
    MultiPoly p(nv);
    p.add_term(m, c);
    return p;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  MultiPoly operator-() const {
    MultiPoly r(nv_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  MultiPoly operator*(const MultiPoly& o) const {
    check_arity(o);
    MultiPoly r(nv_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  MultiPoly operator*(const Rational& c) const {
    MultiPoly r(nv_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
  }

  // Multiply by a single term; cheaper than building a one-term poly.
  MultiPoly times_term(const Monomial& m, const Rational& c) const {
    MultiPoly r(nv_);
    if (c == 0) return r;
    for (const auto& [mm, k] : terms_) r.terms_.emplace(mm * m, k * c);
    return r;
  }

  bool operator==(const MultiPoly& o) const { return nv_ == o.nv_ && terms_ == o.terms_; }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
      if (m.degree() > d) d = m.degree();
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) return false;
    return true;
  }

  bool is_monomial() const { return terms_.size() == 1; }

  // Leading term under plain grlex.
  const std::pair<const Monomial, Rational>& leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return *terms_.begin();
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    auto names = variable_names(nv_);
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational a = c;
      if (first) {
        if (a < 0) {
          out += "-";
          a = -a;
        }
      } else {
        out += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      }
      std::string ms = monomial_to_string(m, names);
      if (a != 1 || ms == "1") {
        out += rational_to_string(a);
        if (ms != "1") out += "*";
      }
      if (ms != "1") out += ms;
      first = false;
    }
    return out;
  }

 private:
  void check_arity(const MultiPoly& o) const {
    if (nv_ != o.nv_) throw std::invalid_argument("polynomial arity mismatch");
  }

  int nv_;
  TermMap terms_;
};

}  // namespace kstab
