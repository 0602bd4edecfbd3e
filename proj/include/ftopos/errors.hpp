#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftopos {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a structural invariant (totality, functoriality, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An intermediate set would exceed the configured size bound.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t size, std::size_t bound)
      : Error(what + ": intermediate size " + std::to_string(size) +
              " exceeds bound " + std::to_string(bound)),
        size_(size),
        bound_(bound) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t bound() const noexcept { return bound_; }

 private:
  std::size_t size_;
  std::size_t bound_;
};

/// Two routes that must agree did not. Always a bug, never a user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ftopos
