#include "foliatk/parser.hpp"

#include <cctype>
#include <limits>

namespace foliatk {

ParseError::ParseError(const std::string& message, std::size_t position)
    : Error(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VariableSet& vars) : s_(text), vars_(vars) {}

  Polynomial run() {
    skip();
    if (at_end()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    if (!at_end()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    skip();
    return true;
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (peek() == '*') {
      ++pos_;
      if (peek() == '*') throw ParseError("unexpected '*'", pos_);
      skip();
      acc *= unary();
    }
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      std::size_t at = pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected a nonnegative integer exponent", at);
      std::string digits = integer();
      if (digits.size() > 4 || std::stoul(digits) > std::numeric_limits<std::uint16_t>::max())
        throw ParseError("exponent too large", at);
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string out(s_.substr(start, pos_ - start));
    skip();
    return out;
  }

  Polynomial atom() {
    char c = peek();
    std::size_t at = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = integer();
      if (peek() == '/') {
        ++pos_;
        skip();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected a denominator", pos_);
        std::size_t den_at = pos_;
        std::string den = integer();
        if (Rational(den) == 0) throw ParseError("zero denominator", den_at);
        lit += "/" + den;
      }
      return Polynomial(vars_, parse_rational(lit));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      skip();
      if (!vars_.find(name)) throw UnknownVariable("undeclared variable '" + name + "' at position " + std::to_string(at));
      return Polynomial::variable(vars_, name);
    }
    if (accept('(')) {
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  std::string_view s_;
  const VariableSet& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_expression(std::string_view text, const VariableSet& vars) { return Parser(text, vars).run(); }

}  // namespace foliatk
