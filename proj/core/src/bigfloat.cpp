#include "bannai/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "bannai/errors.hpp"

namespace bannai {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(x_, prec);
  mpfr_set_zero(x_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
  mpfr_init2(x_, prec);
  mpfr_set_si(x_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const ExactScalar& v, mpfr_prec_t prec) {
  mpfr_init2(x_, prec);
  mpfr_set_q(x_, v.value().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(x_, mpfr_get_prec(o.x_));
  mpfr_set(x_, o.x_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(x_, mpfr_get_prec(o.x_));
  mpfr_swap(x_, o.x_);
}

BigFloat& BigFloat::operator=(BigFloat o) noexcept {
  mpfr_swap(x_, o.x_);
  return *this;
}

BigFloat::~BigFloat() {
  mpfr_clear(x_);
}

std::string BigFloat::str() const {
  // Enough decimal digits to recover all P bits: ceil(P * log10(2)) + 2.
  const long digits = static_cast<long>(precision() * 0.30103) + 2;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", static_cast<int>(digits), x_);
  std::string out(buf);
  mpfr_free_str(buf);
  out += "@" + std::to_string(precision());
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.x_, x_, MPFR_RNDN);
  return r;
}

namespace {
mpfr_prec_t joint_prec(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}
} // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint_prec(a, b));
  mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint_prec(a, b));
  mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint_prec(a, b));
  mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) throw std::domain_error("BigFloat division by zero");
  BigFloat r(joint_prec(a, b));
  mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_abs(r.x_, a.x_, MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_exp(r.x_, a.x_, MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& a) {
  if (a.sign() <= 0) throw std::domain_error("BigFloat log of nonpositive value");
  BigFloat r(a.precision());
  mpfr_log(r.x_, a.x_, MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& a) {
  if (a.sign() < 0) throw std::domain_error("BigFloat sqrt of negative value");
  BigFloat r(a.precision());
  mpfr_sqrt(r.x_, a.x_, MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint_prec(a, b));
  mpfr_hypot(r.x_, a.x_, b.x_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
  BigFloat r(1L, prec);
  mpfr_mul_2si(r.x_, r.x_, e, MPFR_RNDN);
  return r;
}

BigFloat pow_int(const BigFloat& a, long n) {
  if (n < 0) return BigFloat(1L, a.precision()) / pow_int(a, -n);
  BigFloat result(1L, a.precision());
  BigFloat base = a;
  unsigned long e = static_cast<unsigned long>(n);
  while (e > 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1UL;
  }
  return result;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  const BigFloat denom = b.re * b.re + b.im * b.im;
  if (denom.is_zero()) throw std::domain_error("BigComplex division by zero");
  return BigComplex((a.re * b.re + a.im * b.im) / denom,
                    (a.im * b.re - a.re * b.im) / denom);
}

BigComplex pow_int(const BigComplex& a, long n) {
  const mpfr_prec_t prec = a.precision();
  if (n < 0) return BigComplex(BigFloat(1L, prec)) / pow_int(a, -n);
  BigComplex result(BigFloat(1L, prec));
  BigComplex base = a;
  unsigned long e = static_cast<unsigned long>(n);
  while (e > 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1UL;
  }
  return result;
}

void guard_cancellation(const BigFloat& value, const BigFloat& scale, const std::string& what) {
  if (value.is_zero() || scale.is_zero()) return;
  const BigFloat floor = abs(scale) * BigFloat::pow2(-static_cast<long>(value.precision() / 2),
                                                     value.precision());
  if (abs(value) < floor) {
    throw PrecisionError(what + ": cancellation exceeded half the working precision");
  }
}

void guard_cancellation(const BigComplex& value, const BigFloat& scale, const std::string& what) {
  guard_cancellation(abs(value), scale, what);
}

} // namespace bannai
