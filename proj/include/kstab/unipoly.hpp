#pragma once

// Dense univariate polynomials over Rational, coefficient index = power.
// Trailing zero coefficients are stripped, so degree() is exact; the zero
// polynomial has degree -1.

#include <stdexcept>
#include <string>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

class UniPolyQ {
 public:
  UniPolyQ() = default;
  explicit UniPolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { strip(); }

  static UniPolyQ zero() { return UniPolyQ(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  // Coefficient of t^k (zero outside the stored range).
  Rational coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
    return c_[k];
  }

  Rational leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& t) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  UniPolyQ& operator+=(const UniPolyQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    strip();
    return *this;
  }
  UniPolyQ& operator-=(const UniPolyQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    strip();
    return *this;
  }
  friend UniPolyQ operator+(UniPolyQ a, const UniPolyQ& b) { return a += b; }
  friend UniPolyQ operator-(UniPolyQ a, const UniPolyQ& b) { return a -= b; }

  UniPolyQ operator*(const UniPolyQ& o) const {
    if (is_zero() || o.is_zero()) return UniPolyQ();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UniPolyQ(std::move(r));
  }

  UniPolyQ operator*(const Rational& k) const {
    if (k == 0) return UniPolyQ();
    std::vector<Rational> r = c_;
    for (auto& a : r) a *= k;
    return UniPolyQ(std::move(r));
  }

  bool operator==(const UniPolyQ& o) const { return c_ == o.c_; }

  std::string to_string(const std::string& var = "m") const {
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      Rational a = c_[k];
      if (a == 0) continue;
      if (!out.empty()) {
        out += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      } else if (a < 0) {
        out += "-";
        a = -a;
      }
      if (k == 0 || a != 1) out += rational_to_string(a);
      if (k > 0) {
        if (a != 1) out += "*";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void strip() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

}  // namespace kstab
