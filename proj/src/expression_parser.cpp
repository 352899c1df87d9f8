#include "fimalg/expression_parser.hpp"

#include <cctype>

namespace fimalg {

namespace {

using E = ClosureExpr;

class Parser {
 public:
  explicit Parser(std::string_view t) : text_(t) {}

  E run() {
    E e = expr();
    skip();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  E expr() {
    E e = term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        e = e + term();
      } else if (c == '-') {
        ++pos_;
        e = e - term();
      } else {
        return e;
      }
    }
  }

  E term() {
    E e = factor();
    while (peek() == '*') {
      ++pos_;
      e = e * factor();
    }
    return e;
  }

  E factor() {
    if (peek() == '-') {
      ++pos_;
      // A minus directly on a literal is a negative scalar.
      if (std::isdigit(static_cast<unsigned char>(peek()))) return E::scalar(-literal());
      return -factor();
    }
    return atom();
  }

  Rational literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::size_t den = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (den == pos_) fail("expected a denominator");
    }
    try {
      return Rational::parse(text_.substr(start, pos_ - start));
    } catch (const std::exception& ex) {
      pos_ = start;
      fail(ex.what());
    }
  }

  // Whether a factor other than a negation starts at the next non-space
  // character, so "s*-1" reads as adj(s) - 1.
  bool factor_follows() {
    char c = peek();
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }

  std::string_view balanced() {
    std::size_t start = pos_, depth = 1;
    while (pos_ < text_.size()) {
      if (text_[pos_] == '(') ++depth;
      if (text_[pos_] == ')' && --depth == 0) return text_.substr(start, pos_ - start);
      ++pos_;
    }
    pos_ = start;
    fail("unbalanced '('");
  }

  E atom() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c))) return E::scalar(literal());
    if (c == '(') {
      ++pos_;
      E e = expr();
      expect(')');
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view id = text_.substr(start, pos_ - start);
    if (id == "s") {
      if (pos_ < text_.size() && text_[pos_] == '*') {
        const std::size_t star = pos_++;
        if (!factor_follows()) return E::s_star();
        pos_ = star;
      }
      return E::s();
    }
    if (id == "adj" || id == "inv") {
      expect('(');
      E inner = expr();
      expect(')');
      return id == "adj" ? E::adj(inner) : E::inv(inner);
    }
    if (id == "psi") {
      expect('(');
      const std::size_t body = pos_;
      std::string_view raw = balanced();
      ++pos_;
      std::size_t b = raw.find_first_not_of(" \t\n"), e = raw.find_last_not_of(" \t\n");
      if (b == std::string_view::npos) {
        pos_ = body;
        fail("empty series");
      }
      std::string label(raw.substr(b, e - b + 1));
      try {
        return E::psi(QFraction::from_series(RationalSeries::parse(label)), label);
      } catch (const std::exception& ex) {
        pos_ = body + b;
        fail(std::string("bad series: ") + ex.what());
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(id) + "'");
  }
};

}  // namespace

ClosureExpr parse_expression(std::string_view text) { return Parser(text).run(); }

AlgebraElem to_algebra_elem(const ClosureExpr& e) {
  using K = ClosureExpr::Kind;
  switch (e.kind()) {
    case K::S: return AlgebraElem::s();
    case K::Scalar: return AlgebraElem(e.value());
    case K::Add: return to_algebra_elem(e.lhs()) + to_algebra_elem(e.rhs());
    case K::Sub: return to_algebra_elem(e.lhs()) - to_algebra_elem(e.rhs());
    case K::Mul: return to_algebra_elem(e.lhs()) * to_algebra_elem(e.rhs());
    case K::Neg: return -to_algebra_elem(e.lhs());
    case K::Adj: return to_algebra_elem(e.lhs()).star();
    case K::Inv:
    case K::Psi: break;
  }
  throw std::invalid_argument("'" + e.str() + "' is not an element of A (inv and psi are not allowed here)");
}

}  // namespace fimalg
