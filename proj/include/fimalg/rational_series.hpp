#pragma once

// Rational power series over Q backed by linear recurrences: coefficientwise
// (Hadamard) products, certified zero sets, support idempotents and the
// quotient ring of the Hadamard algebra.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fimalg/polynomial.hpp"

namespace fimalg {

/// No period <= the configured bound explains the zero pattern.
struct PeriodBoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// P(x)/Q(x) expanded at 0, Q(0) = 1.
class RationalSeries {
 public:
  RationalSeries() : den_(1) {}
  RationalSeries(Polynomial num, Polynomial den);
  explicit RationalSeries(const PolyFraction& f) : RationalSeries(f.num, f.den) {}
  static RationalSeries parse(std::string_view text) { return RationalSeries(parse_fraction(text)); }

  /// (1-x)^{-1}, the unit for the Hadamard product.
  static RationalSeries hadamard_unit();
  /// The polynomial p.
  static RationalSeries polynomial(const Polynomial& p) { return {p, Polynomial(1)}; }
  /// Shortest recurrence fitting the given prefix (Berlekamp-Massey); the
  /// prefix must be at least twice the true linear complexity.
  static RationalSeries from_prefix(const std::vector<Rational>& prefix);

  [[nodiscard]] const Polynomial& num() const { return num_; }
  [[nodiscard]] const Polynomial& den() const { return den_; }

  /// Size of the shift-register realisation: max(deg Q, deg P + 1).
  [[nodiscard]] std::size_t complexity() const;
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }

  [[nodiscard]] Rational coeff(std::size_t n) const;
  /// a_0 .. a_{count-1}
  [[nodiscard]] std::vector<Rational> coeffs(std::size_t count) const;

  /// Equivalent form with the minimal-order recurrence.
  [[nodiscard]] RationalSeries minimized() const;

  [[nodiscard]] std::string str() const;

  friend RationalSeries operator+(const RationalSeries& a, const RationalSeries& b);
  friend RationalSeries operator-(const RationalSeries& a, const RationalSeries& b);
  friend RationalSeries operator-(const RationalSeries& a);
  /// Cauchy product.
  friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
  friend RationalSeries operator*(const Rational& c, const RationalSeries& a);
  /// Exact equality of the expanded series.
  friend bool operator==(const RationalSeries& a, const RationalSeries& b);

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Coefficientwise product. The product of recurrences of sizes L_a, L_b has
/// size at most L_a L_b (tensor product of the realisations), so
/// Berlekamp-Massey on 2 L_a L_b terms returns the minimal recurrence.
RationalSeries hadamard(const RationalSeries& a, const RationalSeries& b);

/// Rank of the k x k Hankel matrix (a_{i+j}).
std::size_t hankel_rank(const RationalSeries& a, std::size_t k);

/// Power-series coefficients of 1/f, f(0) = 1.
std::vector<Rational> inverse_coeffs(const Polynomial& f, std::size_t count);

/// F u {n >= n0 : n mod N in residues}, with F a subset of [0, n0).
struct QuasiPeriodicSet {
  std::set<std::size_t> finite;
  std::size_t start = 0;  // n0
  std::size_t period = 1;
  std::set<std::size_t> residues;

  [[nodiscard]] bool contains(std::size_t n) const;
  [[nodiscard]] bool empty() const { return finite.empty() && residues.empty(); }
  [[nodiscard]] std::string str() const;
};

/// Residue class n = k mod N beyond the start, and how its behaviour was
/// established.
struct ClassCertificate {
  std::size_t residue = 0;
  bool zero = false;
  /// Zero classes: always true (L consecutive zeros of a subsequence that
  /// obeys an order-L recurrence). Nonzero classes: true when the
  /// subsequence is provably c r^m, false when only the scanned window was
  /// seen to be nonzero.
  bool certified = false;
  std::size_t first_index = 0;  // first member >= start
  std::size_t checked_terms = 0;
};

struct ZeroSetResult {
  QuasiPeriodicSet set;
  std::vector<ClassCertificate> classes;
  std::size_t complexity = 0;
  std::size_t window = 0;
  [[nodiscard]] bool fully_certified() const;
};

/// Proposes a quasi-periodic zero set from a scan of `scan_window`
/// coefficients (0 picks a size from the bound and the complexity) and
/// certifies it. Throws PeriodBoundExceeded when no period <= period_bound
/// fits the window.
ZeroSetResult zero_set(const RationalSeries& a, std::size_t period_bound = 64,
                       std::size_t scan_window = 0);

/// 0/1 series with support equal to the zero set:
/// sum_k x^{k'} (1-x^N)^{-1} + sum_{f in F} x^f.
RationalSeries support_idempotent(const QuasiPeriodicSet& z);
RationalSeries support_idempotent(const RationalSeries& a, std::size_t period_bound = 64);

/// num (.) den^dagger in the classical quotient ring of the Hadamard algebra.
/// The denominator has no zero coefficient.
class QFraction {
 public:
  /// Throws std::invalid_argument unless den has a certified empty zero set.
  QFraction(RationalSeries num, RationalSeries den, std::size_t period_bound = 64);
  /// a / unit.
  static QFraction from_series(const RationalSeries& a);

  [[nodiscard]] const RationalSeries& num() const { return num_; }
  [[nodiscard]] const RationalSeries& den() const { return den_; }
  /// num_n / den_n
  [[nodiscard]] Rational coeff(std::size_t n) const;

  friend QFraction operator*(const QFraction& p, const QFraction& q);
  friend QFraction operator+(const QFraction& p, const QFraction& q);

 private:
  struct Unchecked {};
  QFraction(RationalSeries num, RationalSeries den, Unchecked)
      : num_(std::move(num)), den_(std::move(den)) {}
  RationalSeries num_;
  RationalSeries den_;
};

/// num_p (.) den_q == num_q (.) den_p.
bool q_equal(const QFraction& p, const QFraction& q);

/// ((1-e) (.) b) (.) (a+e)^dagger for p = a (.) b^dagger, e the support
/// idempotent of a.
QFraction q_quasi_inverse(const QFraction& p, std::size_t period_bound = 64);

}  // namespace fimalg
