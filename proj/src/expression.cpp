#include "momentbody/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <vector>

#include "momentbody/errors.hpp"

namespace momentbody {

namespace {

using Fn = std::function<double(double)>;

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw InvalidArgument("expression error at position " + std::to_string(pos) + ": " + what);
  }

  Fn parse_expr() {
    Fn lhs = parse_term();
    for (;;) {
      if (eat('+')) {
        Fn rhs = parse_term();
        lhs = [lhs, rhs](double x) { return lhs(x) + rhs(x); };
      } else if (peek() == '-' ) {
        ++pos;
        Fn rhs = parse_term();
        lhs = [lhs, rhs](double x) { return lhs(x) - rhs(x); };
      } else {
        return lhs;
      }
    }
  }

  Fn parse_term() {
    Fn lhs = parse_factor();
    for (;;) {
      if (eat('*')) {
        Fn rhs = parse_factor();
        lhs = [lhs, rhs](double x) { return lhs(x) * rhs(x); };
      } else if (eat('/')) {
        Fn rhs = parse_factor();
        lhs = [lhs, rhs](double x) { return lhs(x) / rhs(x); };
      } else {
        return lhs;
      }
    }
  }

  Fn parse_factor() {
    skip_ws();
    bool negate = false;
    while (peek() == '-' || peek() == '+') {
      if (text[pos] == '-') negate = !negate;
      ++pos;
    }
    Fn base = parse_atom();
    if (eat('^')) {
      skip_ws();
      bool exp_neg = false;
      if (peek() == '-') {
        exp_neg = true;
        ++pos;
      }
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) fail("expected an integer exponent after '^'");
      const long e = std::strtol(text.substr(start, pos - start).c_str(), nullptr, 10);
      const double expd = exp_neg ? -static_cast<double>(e) : static_cast<double>(e);
      Fn inner = base;
      base = [inner, expd](double x) { return std::pow(inner(x), expd); };
    }
    if (negate) {
      Fn inner = base;
      base = [inner](double x) { return -inner(x); };
    }
    return base;
  }

  bool match_word(const char* word) {
    skip_ws();
    std::size_t i = 0;
    while (word[i] != '\0') {
      if (pos + i >= text.size() || text[pos + i] != word[i]) return false;
      ++i;
    }
    pos += i;
    return true;
  }

  Fn parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      Fn inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == '|') {
      ++pos;
      Fn inner = parse_expr();
      if (!eat('|')) fail("expected closing '|'");
      return [inner](double x) { return std::abs(inner(x)); };
    }
    if (match_word("sqrt")) {
      if (!eat('(')) fail("expected '(' after sqrt");
      Fn inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return [inner](double x) { return std::sqrt(inner(x)); };
    }
    if (match_word("abs")) {
      if (!eat('(')) fail("expected '(' after abs");
      Fn inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return [inner](double x) { return std::abs(inner(x)); };
    }
    if (c == 'x') {
      ++pos;
      return [](double x) { return x; };
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text.c_str() + pos;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number literal");
      pos += static_cast<std::size_t>(end - begin);
      return [v](double) { return v; };
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
  Parser p(text);
  Fn f = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return f;
}

}  // namespace momentbody
