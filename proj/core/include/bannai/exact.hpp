#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "bannai/errors.hpp"

namespace bannai {

/// Arbitrary-precision rational scalar. Always stored in lowest terms with a
/// positive denominator, so equality is structural. All operations are exact.
class ExactScalar {
public:
  ExactScalar() : v_(0) {}
  ExactScalar(long n) : v_(n) {}
  ExactScalar(int n) : v_(static_cast<long>(n)) {}
  ExactScalar(long num, long den);
  explicit ExactScalar(const mpz_class& num, const mpz_class& den = 1);
  explicit ExactScalar(const mpq_class& q);

  /// Parses "p" or "p/q" with optional sign. Throws ParseError on malformed
  /// input or a zero denominator.
  static ExactScalar parse(const std::string& text);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  /// -1, 0, or +1.
  int sign() const { return sgn(v_); }

  /// Serialized form: "num/den", with "/den" omitted when den == 1.
  std::string str() const;

  ExactScalar operator-() const { return ExactScalar(mpq_class(-v_)); }

  ExactScalar& operator+=(const ExactScalar& o) { v_ += o.v_; return *this; }
  ExactScalar& operator-=(const ExactScalar& o) { v_ -= o.v_; return *this; }
  ExactScalar& operator*=(const ExactScalar& o) { v_ *= o.v_; return *this; }
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return a.v_ != b.v_; }
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) { return a.v_ < b.v_; }
  friend bool operator<=(const ExactScalar& a, const ExactScalar& b) { return a.v_ <= b.v_; }
  friend bool operator>(const ExactScalar& a, const ExactScalar& b) { return a.v_ > b.v_; }
  friend bool operator>=(const ExactScalar& a, const ExactScalar& b) { return a.v_ >= b.v_; }

  friend ExactScalar abs(const ExactScalar& a) { return ExactScalar(mpq_class(abs(a.v_))); }

  const mpq_class& value() const { return v_; }

private:
  mpq_class v_; // canonical: lowest terms, positive denominator
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

/// Parity decomposition n = 2*n_e + n_p with n_p in {0, 1}.
struct ParitySplit {
  unsigned n_e = 0;
  unsigned n_p = 0;

  unsigned reconstruct() const { return 2 * n_e + n_p; }
  friend bool operator==(const ParitySplit&, const ParitySplit&) = default;
};

ParitySplit parity_split(unsigned n);

/// Rising factorial a(a+1)...(a+n-1); 1 when n == 0. For a a nonpositive
/// integer with n past the zero crossing the product is exactly 0.
ExactScalar pochhammer(const ExactScalar& a, unsigned n);

ExactScalar factorial(unsigned n);
ExactScalar binomial(unsigned n, unsigned k);

/// 1 for even n, 0 for odd n (the parity indicator).
ExactScalar even_indicator(long n);

/// (-1)^n as an exact scalar.
ExactScalar sign_pow(long n);

/// a^n for integer n (n < 0 requires a != 0).
ExactScalar pow_int(const ExactScalar& a, long n);

} // namespace bannai
