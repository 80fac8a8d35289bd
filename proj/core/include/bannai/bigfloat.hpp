#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "bannai/exact.hpp"

namespace bannai {

/// Arbitrary-precision real, correctly rounded at a fixed precision chosen at
/// construction. Binary operations round at the larger operand precision.
class BigFloat {
public:
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
  BigFloat(long v, mpfr_prec_t prec);
  BigFloat(const ExactScalar& v, mpfr_prec_t prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(BigFloat o) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(x_); }

  bool is_zero() const { return mpfr_zero_p(x_) != 0; }
  int sign() const { return mpfr_sgn(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

  /// Decimal string with precision annotation, e.g. "1.25e-3@256".
  std::string str() const;

  BigFloat operator-() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);

  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return compare(a, b) != 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }

  friend BigFloat abs(const BigFloat& a);
  friend BigFloat exp(const BigFloat& a);
  friend BigFloat log(const BigFloat& a);
  friend BigFloat sqrt(const BigFloat& a);
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b);

  /// 2^e at the given precision (exact).
  static BigFloat pow2(long e, mpfr_prec_t prec);

private:
  mpfr_t x_;
};

BigFloat pow_int(const BigFloat& a, long n);

/// Complex number over BigFloat. Phases +/- i enter the limit parametrizations,
/// so every q-side quantity is carried as a complex value.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(mpfr_prec_t prec = BigFloat::kDefaultPrecision)
      : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(const BigFloat& r) : re(r), im(BigFloat(0L, r.precision())) {}

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  BigComplex operator-() const { return BigComplex(-re, -im); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re + b.re, a.im + b.im);
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re - b.re, a.im - b.im);
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);

  BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
  BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
  BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

  friend BigComplex conj(const BigComplex& a) { return BigComplex(a.re, -a.im); }
  friend BigFloat abs(const BigComplex& a) { return hypot(a.re, a.im); }
};

BigComplex pow_int(const BigComplex& a, long n);

/// Throws PrecisionError when a computed value lost more than half its working
/// bits to cancellation: 0 < |value| < scale * 2^(-P/2) with P = value precision.
void guard_cancellation(const BigFloat& value, const BigFloat& scale, const std::string& what);
void guard_cancellation(const BigComplex& value, const BigFloat& scale, const std::string& what);

} // namespace bannai
