#pragma once

// The semigroup algebra A = Q[F] of the monogenic free inverse monoid.

#include <map>
#include <string>

#include "fimalg/free_inverse_monoid.hpp"
#include "fimalg/polynomial.hpp"
#include "fimalg/rational.hpp"

namespace fimalg {

class AlgebraElem {
 public:
  using Terms = std::map<MunnTriple, Rational>;

  AlgebraElem() = default;
  AlgebraElem(Rational c);  // NOLINT(google-explicit-constructor)
  AlgebraElem(int c) : AlgebraElem(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit AlgebraElem(const MunnTriple& t, Rational c = 1);

  static AlgebraElem one() { return AlgebraElem(1); }
  static AlgebraElem s() { return AlgebraElem(MunnTriple::s()); }
  static AlgebraElem s_star() { return AlgebraElem(MunnTriple::s_star()); }
  /// s^k (s*)^l s^m; throws unless l >= k and l >= m.
  static AlgebraElem monomial(long k, long l, long m);

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Rational coeff(const MunnTriple& t) const;
  [[nodiscard]] AlgebraElem star() const;
  /// Largest |lo| or hi over the support; the element lives in the span of
  /// walks of this width.
  [[nodiscard]] long width() const;
  [[nodiscard]] std::string str() const;

  AlgebraElem& operator+=(const AlgebraElem& o);
  AlgebraElem& operator-=(const AlgebraElem& o);
  AlgebraElem& operator*=(const Rational& c);
  friend AlgebraElem operator+(AlgebraElem a, const AlgebraElem& b) { return a += b; }
  friend AlgebraElem operator-(AlgebraElem a, const AlgebraElem& b) { return a -= b; }
  friend AlgebraElem operator-(AlgebraElem a) { return a *= Rational(-1); }
  friend AlgebraElem operator*(const Rational& c, AlgebraElem a) { return a *= c; }
  friend AlgebraElem operator*(const AlgebraElem& a, const AlgebraElem& b);
  friend bool operator==(const AlgebraElem&, const AlgebraElem&) = default;

 private:
  void add_term(const MunnTriple& t, const Rational& c);
  Terms terms_;
};

AlgebraElem pow(const AlgebraElem& a, unsigned e);

/// f(x) for an algebra element x (Horner).
AlgebraElem eval_poly(const Polynomial& f, const AlgebraElem& x);

/// q_{-i,j} = (s^i s*^i - s^{i+1} s*^{i+1}) (s*^j s^j - s*^{j+1} s^{j+1}).
const AlgebraElem& q_proj(long i, long j);

/// h_n = q_{0,n} + q_{-1,n-1} + ... + q_{-n,0}.
const AlgebraElem& h_proj(long n);

/// Matrix unit of h_n A ~ M_{n+1}, indices 1-based: the diagonal unit (a, a) is
/// q_{-(a-1), n-a+1}; below the diagonal s^{a-b} (b, b), above s*^{b-a} (b, b).
AlgebraElem h_matrix_unit(long n, long a, long b);

/// a == sum_{n <= T} h_n a, i.e. a lies in the socle summands of index <= T.
bool is_socle_supported(const AlgebraElem& a, long T);

/// e >= f in the idempotent order: e f = f e = f.
bool idempotent_ge(const AlgebraElem& e, const AlgebraElem& f);

}  // namespace fimalg
