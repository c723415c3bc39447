#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gradflow {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected)
      : Error("syntax error at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class UnknownIdentifierError : public Error {
 public:
  UnknownIdentifierError(std::size_t offset, std::string name)
      : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
        offset_(offset),
        name_(std::move(name)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t offset_;
  std::string name_;
};

/// Evaluation produced inf or nan; `subexpression` is the canonical text of
/// the innermost node whose value went non-finite.
class NonFiniteError : public Error {
 public:
  NonFiniteError(std::string subexpression, double x)
      : Error("non-finite result in '" + subexpression + "' at x=" + std::to_string(x)),
        subexpression_(std::move(subexpression)),
        x_(x) {}

  const std::string& subexpression() const noexcept { return subexpression_; }
  double x() const noexcept { return x_; }

 private:
  std::string subexpression_;
  double x_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical quantity overflowed. Dynamics treats this as blow-up evidence.
class RangeError : public Error {
 public:
  using Error::Error;
};

class GridMismatchError : public Error {
 public:
  GridMismatchError() : Error("fields live on different grids") {}
};

class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

}  // namespace gradflow
