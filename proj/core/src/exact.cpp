#include "bannai/exact.hpp"

#include <cctype>
#include <ostream>

namespace bannai {

namespace {

bool valid_integer_literal(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// mpz_class's string constructor rejects a leading '+'.
mpz_class parse_integer(const std::string& s) {
  return mpz_class(s.front() == '+' ? s.substr(1) : s);
}

} // namespace

ExactScalar::ExactScalar(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

ExactScalar::ExactScalar(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num) / mpq_class(den);
}

ExactScalar::ExactScalar(const mpq_class& q) : v_(q) {
  v_.canonicalize();
}

ExactScalar ExactScalar::parse(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num_part = text.substr(0, slash);
  if (!valid_integer_literal(num_part)) {
    throw ParseError("malformed rational '" + text + "'");
  }
  mpz_class num = parse_integer(num_part);
  mpz_class den(1);
  if (slash != std::string::npos) {
    const std::string den_part = text.substr(slash + 1);
    if (!valid_integer_literal(den_part)) {
      throw ParseError("malformed rational '" + text + "'");
    }
    den = parse_integer(den_part);
    if (sgn(den) == 0) {
      throw ParseError("zero denominator in rational '" + text + "'");
    }
  }
  return ExactScalar(num, den);
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string ExactScalar::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) {
  return os << x.str();
}

ParitySplit parity_split(unsigned n) {
  return ParitySplit{n / 2, n % 2};
}

ExactScalar pochhammer(const ExactScalar& a, unsigned n) {
  ExactScalar result(1);
  ExactScalar factor = a;
  for (unsigned k = 0; k < n; ++k) {
    if (factor.is_zero()) return ExactScalar(0);
    result *= factor;
    factor += ExactScalar(1);
  }
  return result;
}

ExactScalar factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return ExactScalar(f);
}

ExactScalar binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return ExactScalar(b);
}

ExactScalar even_indicator(long n) {
  return ExactScalar(n % 2 == 0 ? 1 : 0);
}

ExactScalar sign_pow(long n) {
  return ExactScalar(n % 2 == 0 ? 1 : -1);
}

ExactScalar pow_int(const ExactScalar& a, long n) {
  if (n < 0) {
    if (a.is_zero()) throw std::domain_error("zero raised to a negative power");
    return ExactScalar(1) / pow_int(a, -n);
  }
  ExactScalar result(1);
  ExactScalar base = a;
  unsigned long e = static_cast<unsigned long>(n);
  while (e > 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1UL;
  }
  return result;
}

} // namespace bannai
