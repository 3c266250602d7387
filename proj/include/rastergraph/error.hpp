#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rastergraph {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Carries a 1-based line and column when known
/// (0 means unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A value violates a data-model invariant (literal subject, bow-tie polygon,
/// inconsistent raster layout, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation received arguments of the wrong kind.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// A position or index lies outside a raster's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace rastergraph
