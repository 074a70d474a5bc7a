#pragma once

#include <string>
#include <string_view>

#include "foliatk/polynomial.hpp"

namespace foliatk {

/// Syntax error with the 0-based byte offset of the offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Rational literals (n or n/d), declared names, + - * ^ with nonnegative
/// integer exponents, and parentheses. No implicit multiplication.
Polynomial parse_expression(std::string_view text, const VariableSet& vars);

}  // namespace foliatk
