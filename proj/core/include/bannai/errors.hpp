#pragma once

#include <stdexcept>
#include <string>

namespace bannai {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A denominator or Pochhammer factor vanished; the message names the factor.
class PoleError : public Error {
public:
  explicit PoleError(const std::string& what) : Error(what) {}
};

/// The hypergeometric normalization is zero or undefined; callers should
/// fall back to the recurrence evaluator.
class NormalizationError : public Error {
public:
  explicit NormalizationError(const std::string& what) : Error(what) {}
};

/// The requested construction is declared inadmissible (singular u_n).
class InadmissibleError : public Error {
public:
  explicit InadmissibleError(const std::string& what) : Error(what) {}
};

/// A degree index left the simplex n1 + n2 <= N the tables are defined on.
class DegreeError : public Error {
public:
  explicit DegreeError(const std::string& what) : Error(what) {}
};

/// Exact interpolation found a nonzero coefficient beyond the expected degree.
class InterpolationError : public Error {
public:
  explicit InterpolationError(const std::string& what) : Error(what) {}
};

/// A floating-point computation cancelled more than half its working bits.
class PrecisionError : public Error {
public:
  explicit PrecisionError(const std::string& what) : Error(what) {}
};

/// Malformed user input (rational literals, config values).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace bannai
