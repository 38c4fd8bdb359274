#include "haardist/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace haardist {

namespace {
int wider(const mpfr_t& a, const mpfr_t& b) {
  return static_cast<int>(std::max(mpfr_get_prec(a), mpfr_get_prec(b)));
}
}  // namespace

BigFloat::BigFloat(int bits) {
  mpfr_init2(v_, std::max(bits, MPFR_PREC_MIN));
  mpfr_set_nan(v_);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_double(double x, int bits) {
  BigFloat r(bits);
  mpfr_set_d(r.v_, x, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_rational(const Rational& q, int bits) {
  BigFloat r(bits);
  mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_long(long x, int bits) {
  BigFloat r(bits);
  mpfr_set_si(r.v_, x, MPFR_RNDN);
  return r;
}

int BigFloat::precision_bits() const { return static_cast<int>(mpfr_get_prec(v_)); }

double BigFloat::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

std::string BigFloat::to_decimal_string() const {
  int digits = static_cast<int>(std::ceil(precision_bits() * 0.30103)) + 2;
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits, v_);
  return std::string(buf.data());
}

int BigFloat::sign() const {
  if (mpfr_zero_p(v_)) return 0;
  return mpfr_signbit(v_) ? -1 : 1;
}

BigFloat BigFloat::abs() const {
  BigFloat r(precision_bits());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow_ui(unsigned long e) const {
  BigFloat r(precision_bits());
  mpfr_pow_ui(r.v_, v_, e, MPFR_RNDN);
  return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  if (mpfr_get_prec(v_) < mpfr_get_prec(rhs.v_)) {
    BigFloat r = *this + rhs;
    mpfr_swap(v_, r.v_);
    return *this;
  }
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  if (mpfr_get_prec(v_) < mpfr_get_prec(rhs.v_)) {
    BigFloat r = *this - rhs;
    mpfr_swap(v_, r.v_);
    return *this;
  }
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  if (mpfr_get_prec(v_) < mpfr_get_prec(rhs.v_)) {
    BigFloat r = *this * rhs;
    mpfr_swap(v_, r.v_);
    return *this;
  }
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  if (mpfr_get_prec(v_) < mpfr_get_prec(rhs.v_)) {
    BigFloat r = *this / rhs;
    mpfr_swap(v_, r.v_);
    return *this;
  }
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a.v_, b.v_));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a.v_, b.v_));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a.v_, b.v_));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a.v_, b.v_));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a) {
  BigFloat r(a.precision_bits());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }

long BigFloat::exponent_bound() const {
  if (mpfr_zero_p(v_) || mpfr_nan_p(v_)) return -(1L << 30);
  return static_cast<long>(mpfr_get_exp(v_));
}

}  // namespace haardist
