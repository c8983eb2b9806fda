#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpb {

/// Malformed or semantically invalid user input (documents, CLI arguments).
/// `line` and `column` are 1-based; 0 means "not tied to a position".
class InputError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Semantic };

  InputError(Kind kind, const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(message), kind_(kind), line_(line), column_(column) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// A precondition of a library operation was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal consistency check failed. Always indicates a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mpb
