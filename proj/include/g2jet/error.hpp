#pragma once

#include <stdexcept>
#include <string>

namespace g2jet {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands carry different nominal truncation orders.
class OrderMismatch : public Error {
 public:
  using Error::Error;
};

/// An identity or operation was requested beyond the effective order of its input.
class InsufficientOrder : public Error {
 public:
  using Error::Error;
};

/// A value (typically a fractional power) has no representative in the active scalar backend.
class NotRepresentable : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold for the supplied input.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// An iterative jet solver stopped raising the valuation of its residual.
class Stagnation : public Error {
 public:
  using Error::Error;
};

/// Malformed input document (form files, coefficient strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace g2jet
