#pragma once

#include <mpfr.h>

#include <string>

#include "haardist/rational.hpp"

namespace haardist {

/// Arbitrary-precision float with an explicit per-value precision.
/// Binary operations round to the wider precision of the two operands.
class BigFloat {
 public:
  explicit BigFloat(int bits = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from_double(double x, int bits);
  static BigFloat from_rational(const Rational& q, int bits);
  static BigFloat from_long(long x, int bits);

  int precision_bits() const;
  double to_double() const;
  std::string to_decimal_string() const;

  int sign() const;  // -1, 0, +1
  BigFloat abs() const;
  BigFloat pow_ui(unsigned long e) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);

  friend int compare(const BigFloat& a, const BigFloat& b);
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }

  /// log2 of |x| rounded up, or a very negative value for zero.
  long exponent_bound() const;

  const mpfr_t& raw() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace haardist
