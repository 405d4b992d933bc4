#pragma once

#include <stdexcept>
#include <string>

namespace obk {

/// Raised when an operation's precondition on the topological data fails,
/// e.g. a nonzero framing offset before a push-off.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes that do not match the owning surface's basis.
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed interchange text or word spec. Carries a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace obk
