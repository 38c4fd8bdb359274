#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "haardist/errors.hpp"

namespace haardist {

/// Exact rational scalar. Every IEEE double is representable exactly.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational_from_double(double x) {
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

/// Canonical text form "p" or "p/q", e.g. "-3/16".
inline std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

inline Rational rational_from_string(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw DomainError("not a rational literal: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Rational pow_rational(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
  return r;
}

}  // namespace haardist
