#pragma once

// Univariate polynomials over Q.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fimalg/rational.hpp"

namespace fimalg {

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational c);  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial x() { return monomial(1); }
  static Polynomial monomial(std::size_t deg, Rational c = 1);

  /// Parses expressions such as "1 - x^2", "(1+x)(1-2x)", "3/2 x^3".
  /// Throws std::invalid_argument with the failing position.
  static Polynomial parse(std::string_view text);

  /// Degree; -1 for the zero polynomial.
  [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  [[nodiscard]] const std::vector<Rational>& coeffs() const { return c_; }
  [[nodiscard]] Rational operator()(const Rational& v) const;

  /// x^deg p(1/x) for deg = degree().
  [[nodiscard]] Polynomial reversed() const;
  /// Coefficientwise involution (identity over Q).
  [[nodiscard]] Polynomial conj() const { return *this; }

  [[nodiscard]] std::string str() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Quotient and remainder; throws std::domain_error on a zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Polynomial power.
Polynomial pow(const Polynomial& p, unsigned e);

/// Quotient of two polynomials, as written in a series literal "P/Q".
struct PolyFraction {
  Polynomial num;
  Polynomial den;
};

/// Parses "P" or "P / Q", e.g. "1/(1-x^2)", "x^3/(1-x)".
PolyFraction parse_fraction(std::string_view text);

}  // namespace fimalg
