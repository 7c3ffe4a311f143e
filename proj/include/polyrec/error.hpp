#pragma once

#include <stdexcept>
#include <string>

namespace polyrec {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer arithmetic left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was not met.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Work or memory would exceed a configured budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Floating point reconstruction of an exact integer drifted too far.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A constructive search ran out of candidates.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (set files, generator specs, fractions).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyrec
