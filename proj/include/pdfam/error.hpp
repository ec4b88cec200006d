#pragma once

#include <stdexcept>
#include <string>

namespace pdfam {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied input violates an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed (a builder produced an inconsistent complex).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A construction was requested whose geometric hypothesis does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdfam
