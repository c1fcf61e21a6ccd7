#pragma once

#include <stdexcept>
#include <string>

namespace circpierce {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unparsable coordinates, bad files, empty societies.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Rational and floating coordinates were combined.
class KindMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// Well-formed request whose parameters fall outside the operation's domain
/// (h >= n, q < 2, p outside (0,1), k > m, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Combinatorial enumeration refused because it would be too large.
class TooLarge : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A property that must hold by construction did not. Always a defect.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace circpierce
