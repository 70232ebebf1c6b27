#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddqc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or missing files.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed edge lists, manifests, or flags. Carries the 1-based line number
// when one is known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Inputs outside an operation's mathematical domain (empty sequences,
// degenerate normalization, missing intra/inter pairs, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid model or quantization parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Power-law fit is undefined for the given distribution.
class FitError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace ddqc
