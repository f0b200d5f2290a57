#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilharm {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a differential operator has an identically vanishing symbol.
class ZeroOperatorError : public std::invalid_argument {
 public:
  ZeroOperatorError() : std::invalid_argument("operator is identically zero") {}
};

/// Raised when a word exceeds the stencil budget.
class UnsupportedOrderError : public std::invalid_argument {
 public:
  explicit UnsupportedOrderError(std::size_t length)
      : std::invalid_argument("word length " + std::to_string(length) +
                              " exceeds the supported maximum of 4") {}
};

class SyntaxError : public std::invalid_argument {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nilharm
