#pragma once

#include <stdexcept>
#include <string>

namespace haardist {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input validation failed (bad argument value, malformed file, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Operation requires at least two distinct eigenvalues.
class DegenerateSpectrum : public DomainError {
 public:
  explicit DegenerateSpectrum(const std::string& what) : DomainError(what) {}
};

/// Matrix or register dimensions do not match.
class DimensionMismatch : public DomainError {
 public:
  explicit DimensionMismatch(const std::string& what) : DomainError(what) {}
};

/// Requested computation needs more working precision than allowed.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

/// Combinatorial reference computation refused (cost grows with t!).
class OracleTooLarge : public DomainError {
 public:
  explicit OracleTooLarge(const std::string& what) : DomainError(what) {}
};

}  // namespace haardist
