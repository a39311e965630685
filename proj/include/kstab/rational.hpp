#pragma once

// Exact scalars for the algebraic side of the pipeline. GMP-backed: a
// Rational is always in lowest terms with positive denominator, and no
// operation silently converts to floating point.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kstab {

using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "p/q" or "p" (base 10). Rejects empty input and zero denominators.
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  try {
    q = mpq_class(s, 10);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

// Canonical form: "p/q", or "p" when the denominator is 1.
inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline BigInt binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative argument");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// b^e for integer b and e >= 0, with 0^0 = 1.
inline BigInt ipow(const BigInt& b, long e) {
  if (e < 0) throw std::invalid_argument("negative integer exponent");
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

inline Rational qpow(const Rational& b, long e) {
  if (e >= 0) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;  // powers of a canonical fraction stay canonical
  }
  if (b == 0) throw std::domain_error("zero to a negative power");
  return qpow(Rational(1) / b, -e);
}

}  // namespace kstab
