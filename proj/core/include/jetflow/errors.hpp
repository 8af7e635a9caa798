#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold for its input.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised when an exact spectrum is required but some eigenvalue lies
/// outside Q(i).
class SpectrumError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A postcondition that theory guarantees has failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace jetflow
