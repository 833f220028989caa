#pragma once

#include <stdexcept>
#include <string>

namespace ctreg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument or configuration was violated.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated IMG1/SIN1 input.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Two operands disagree in shape or sampling geometry.
class GeometryMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace ctreg
