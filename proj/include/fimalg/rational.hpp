#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace fimalg {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator (GMP canonicalises after every operation).
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p", "-p", "p/q". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  /// 2^e for any integer e.
  static Rational pow2(long e);

  [[nodiscard]] std::string str() const { return v_.get_str(); }
  [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
  [[nodiscard]] bool is_one() const { return v_ == 1; }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(v_); }
  [[nodiscard]] mpz_class numerator() const { return v_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return v_.get_den(); }
  [[nodiscard]] double to_double() const { return v_.get_d(); }
  [[nodiscard]] const mpq_class& raw() const { return v_; }

  /// Identity involution (the base field is Q).
  [[nodiscard]] Rational conj() const { return *this; }
  [[nodiscard]] Rational inverse() const;

  /// True iff the value lies in Z[1/2], i.e. the denominator is a power of two.
  [[nodiscard]] bool is_dyadic() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

/// Scalar requirements for the matrix layer: a commutative field with an
/// involution. Rational is the only model shipped.
template <typename K>
concept Field = std::regular<K> && requires(K a, K b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::convertible_to<K>;
  { a.conj() } -> std::convertible_to<K>;
  K(0);
  K(1);
};

static_assert(Field<Rational>);

}  // namespace fimalg

template <>
struct std::hash<fimalg::Rational> {
  std::size_t operator()(const fimalg::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
