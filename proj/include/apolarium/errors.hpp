#pragma once

#include <stdexcept>
#include <string>

namespace apolarium {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (arity mismatch, zero input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial / tensor / JSON text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured size limit (terms, entries, degree) would be exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace apolarium
