#pragma once

// Text input for polynomials and weight vectors. The polynomial grammar is
// sums of terms, where a term is an optional rational coefficient and
// variable powers joined by '*' or juxtaposition: "x*z - y^2", "3/2 x0^2 x1".
// Variables are x0, x1, ... with x, y, z accepted as aliases for x0, x1, x2.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "kstab/multipoly.hpp"
#include "kstab/rational.hpp"

namespace kstab {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct PolyScanner {
  const std::string& s;
  size_t i = 0;

  explicit PolyScanner(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(i) + " in '" + s + "'");
  }

  long read_uint() {
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected integer");
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) fail("integer literal too large");
      ++i;
    }
    return v;
  }

  Rational read_rational() {
    long num = read_uint();
    skip_ws();
    if (i < s.size() && s[i] == '/') {
      ++i;
      long den = read_uint();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  // Returns variable index, or -1 if the cursor is not at a variable.
  int read_var() {
    skip_ws();
    if (i >= s.size()) return -1;
    char c = s[i];
    if (c == 'y') {
      ++i;
      return 1;
    }
    if (c == 'z') {
      ++i;
      return 2;
    }
    if (c != 'x') return -1;
    ++i;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) return static_cast<int>(read_uint());
    return 0;
  }
};

}  // namespace detail

// True when the character at 'at' is one of the y/z aliases or a bare x.
inline bool s_is_alias(const std::string& s, size_t at) {
  if (at >= s.size()) return false;
  char c = s[at];
  if (c == 'y' || c == 'z') return true;
  if (c == 'x') return at + 1 >= s.size() || !std::isdigit(static_cast<unsigned char>(s[at + 1]));
  return false;
}

// Parses one polynomial. nv <= 0 means autodetect (max variable index + 1,
// and at least 3 whenever the x/y/z aliases may be in play).
inline MultiPoly parse_poly(const std::string& text, int nv = 0) {
  detail::PolyScanner sc(text);

  struct RawTerm {
    Rational c;
    std::vector<std::pair<int, int>> powers;  // (variable, exponent)
  };
  std::vector<RawTerm> raw;
  int max_index = -1;
  bool alias_used = false;

  bool first = true;
  while (!sc.done()) {
    Rational sign(1);
    char c = sc.peek();
    if (c == '+' || c == '-') {
      sign = (c == '-') ? Rational(-1) : Rational(1);
      ++sc.i;
    } else if (!first) {
      sc.fail("expected '+' or '-' between terms");
    }
    if (sc.done()) sc.fail("dangling sign");

    RawTerm t;
    t.c = sign;
    bool have_factor = false;
    while (true) {
      char p = sc.peek();
      if (std::isdigit(static_cast<unsigned char>(p))) {
        t.c *= sc.read_rational();
        have_factor = true;
      } else if (p == 'x' || p == 'y' || p == 'z') {
        size_t at = sc.i;
        int v = sc.read_var();
        if (v < 0) sc.fail("expected variable");
        if (s_is_alias(text, at)) alias_used = true;
        int e = 1;
        if (sc.peek() == '^') {
          ++sc.i;
          e = static_cast<int>(sc.read_uint());
        }
        t.powers.emplace_back(v, e);
        if (v > max_index) max_index = v;
        have_factor = true;
      } else {
        break;
      }
      if (sc.peek() == '*') {
        ++sc.i;
        continue;
      }
      // juxtaposition: keep consuming factors until an operator or the end
      char q = sc.peek();
      if (q == '+' || q == '-' || q == '\0') break;
    }
    if (!have_factor) sc.fail("expected term");
    raw.push_back(std::move(t));
    first = false;
  }
  if (raw.empty()) throw ParseError("empty polynomial in '" + text + "'");

  int need = max_index + 1;
  if (alias_used && need < 3) need = 3;
  if (nv <= 0) nv = need;
  if (need > nv)
    throw ParseError("variable index out of range for " + std::to_string(nv) + " variables in '" +
                     text + "'");

  MultiPoly out(nv);
  for (const auto& t : raw) {
    Monomial m = Monomial::one(nv);
    for (auto [v, e] : t.powers) m.e[static_cast<size_t>(v)] += e;
    out.add_term(m, t.c);
  }
  return out;
}

// "2,-1,-1" -> {2,-1,-1}
inline std::vector<long> parse_lambda(const std::string& text) {
  std::vector<long> out;
  size_t i = 0;
  while (i <= text.size()) {
    size_t j = text.find(',', i);
    if (j == std::string::npos) j = text.size();
    std::string tok = text.substr(i, j - i);
    size_t a = tok.find_first_not_of(" \t");
    size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty weight in '" + text + "'");
    tok = tok.substr(a, b - a + 1);
    try {
      size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad weight '" + tok + "' in '" + text + "'");
    }
    if (j == text.size()) break;
    i = j + 1;
  }
  if (out.empty()) throw ParseError("empty weight vector");
  return out;
}

}  // namespace kstab
