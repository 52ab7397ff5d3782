#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hlat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: non-symmetric matrix, bad parameters, unknown vertex.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Text input that failed to parse. `line()` is 1-based, 0 when unknown.
class ParseError : public InvalidArgument {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidArgument(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A stated hypothesis of an operation does not hold for the given input.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// An exact certificate failed re-verification.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

class NotNormBounded : public Error {
 public:
  using Error::Error;
};

class NotRootLattice : public Error {
 public:
  using Error::Error;
};

class Unrepresentable : public Error {
 public:
  using Error::Error;
};

class IsometryNotFound : public Error {
 public:
  using Error::Error;
};

class ExtractionFailed : public Error {
 public:
  using Error::Error;
};

/// Input lies outside the lambda_min >= -3 regime.
class OutOfScope : public Error {
 public:
  using Error::Error;
};

/// Hoffman graph already has smallest eigenvalue >= -3.
class NotForbidden : public Error {
 public:
  using Error::Error;
};

}  // namespace hlat
