#pragma once

// Truncated images of A (and of expressions over it) in prod_{n<=T} M_{n+1}(Q),
// exact rank sequences and the weighted von Neumann rank.

#include <optional>
#include <string>
#include <vector>

#include "fimalg/exact_linalg.hpp"
#include "fimalg/polynomial.hpp"
#include "fimalg/semigroup_algebra.hpp"

namespace fimalg {

/// Thrown by inverse() when some component is singular.
struct SingularComponent : std::domain_error {
  SingularComponent(long component, const std::string& what)
      : std::domain_error(what), component(component) {}
  long component;
};

/// Components 0..T of an element of M_d(prod_n M_{n+1}(Q)); component n is a
/// d(n+1) x d(n+1) matrix.
class TruncatedRep {
 public:
  TruncatedRep() = default;
  TruncatedRep(long T, long d, std::vector<ExactMatrix> components);

  static TruncatedRep identity(long T, long d = 1);
  static TruncatedRep zero(long T, long d = 1);
  static TruncatedRep scalar(const Rational& c, long T, long d = 1);
  /// Central element with value coeffs[n] on component n.
  static TruncatedRep central(const std::vector<Rational>& coeffs, long T, long d = 1);

  [[nodiscard]] long T() const { return T_; }
  [[nodiscard]] long d() const { return d_; }
  [[nodiscard]] const ExactMatrix& component(long n) const { return comps_.at(static_cast<std::size_t>(n)); }
  [[nodiscard]] const std::vector<ExactMatrix>& components() const { return comps_; }
  [[nodiscard]] bool is_zero() const;

  [[nodiscard]] TruncatedRep adjoint() const;
  /// Componentwise inverse: unipotent components use the geometric series,
  /// others Gauss-Jordan. Throws SingularComponent.
  [[nodiscard]] TruncatedRep inverse() const;
  /// Index of the first component that differs, or -1.
  [[nodiscard]] long first_difference(const TruncatedRep& o) const;
  /// Largest n with a nonzero component, or -1.
  [[nodiscard]] long last_nonzero() const;

  TruncatedRep& operator+=(const TruncatedRep& o);
  TruncatedRep& operator-=(const TruncatedRep& o);
  friend TruncatedRep operator+(TruncatedRep a, const TruncatedRep& b) { return a += b; }
  friend TruncatedRep operator-(TruncatedRep a, const TruncatedRep& b) { return a -= b; }
  friend TruncatedRep operator-(const TruncatedRep& a);
  friend TruncatedRep operator*(const TruncatedRep& a, const TruncatedRep& b);
  friend TruncatedRep operator*(const Rational& c, const TruncatedRep& a);
  friend bool operator==(const TruncatedRep&, const TruncatedRep&) = default;

 private:
  void check_compatible(const TruncatedRep& o) const;
  long T_ = -1;
  long d_ = 1;
  std::vector<ExactMatrix> comps_;
};

/// Image of a single monomial in M_{n+1}: s -> lower shift, s* -> upper shift.
ExactMatrix monomial_component(const MunnTriple& t, long n);

/// Image of a in M_{n+1}.
ExactMatrix represent_component(const AlgebraElem& a, long n);

TruncatedRep represent(const AlgebraElem& a, long T);

/// Blockwise image of a d x d matrix over A.
TruncatedRep represent_matrix(const std::vector<std::vector<AlgebraElem>>& m, long T);

std::vector<std::size_t> rank_sequence(const TruncatedRep& r);

/// Eventual law rank_n = alpha_r (n+1) + beta_r for n >= n0, n = r mod N.
struct RankPattern {
  long n0 = 0;
  long period = 1;
  std::vector<std::pair<Rational, Rational>> residues;  // indexed by n mod period
};

struct RankResult {
  long T = -1;
  long d = 1;
  std::vector<std::size_t> ranks;
  Rational partial;      // sum_{n<=T} rank_n 2^{-(n+2)}
  Rational tail_bound;   // sum_{n>T} d(n+1) 2^{-(n+2)}
  std::optional<RankPattern> pattern;
  std::optional<Rational> exact;

  [[nodiscard]] Rational lower() const { return partial; }
  [[nodiscard]] Rational upper() const { return partial + tail_bound; }
  [[nodiscard]] Rational width() const { return tail_bound; }
  [[nodiscard]] bool encloses(const Rational& v) const { return lower() <= v && v <= upper(); }
};

/// 2^{-(n+2)}, the weight of one unit of rank in component n.
Rational component_weight(long n);

/// sum_{n>T} (n+1) 2^{-(n+2)} = (T+3) / 2^{T+2}.
Rational rank_tail(long T);

/// Searches n0 <= T/2 and period <= max_period (smallest period first, then
/// smallest n0) for an affine-periodic law holding on every component >= n0,
/// with at least three samples per residue class.
std::optional<RankPattern> detect_pattern(const std::vector<std::size_t>& ranks, long d,
                                          long max_period = 8);

/// Closed-form weighted sum of an eventual pattern plus the explicit prefix.
Rational pattern_sum(const std::vector<std::size_t>& ranks, const RankPattern& p);

RankResult vn_rank(const TruncatedRep& r);

/// Componentwise (f(s))^{-1} for f(0) = 1.
TruncatedRep localize_inverse(const Polynomial& f, long T);

/// Componentwise (f(s)*)^{-1} for f(0) = 1.
TruncatedRep adjoint_inverse(const Polynomial& f, long T);

/// Check of the congruence
///   (f(s)*)^{-1} = f1(s)^{-1} s^n - sum_{i<n} f1(s)^{-1} s^i (1-ss*) P_i(s)* (f(s)*)^{-1}
/// with f1(x) = a_n + a_{n-1} x + ... + x^n and P_i(x) = -sum_{j<=i} a_{n-j} x^{i-j},
/// together with the polynomial form
///   f1(s) = s^n f(s)* - sum_{i<n} s^i (1-ss*) P_i(s)*.
struct InverseFormulaReport {
  long degree = 0;
  long T = 0;
  std::vector<char> inverse_holds;     // per component
  std::vector<char> polynomial_holds;  // per component
  long least_from = -1;  // least m such that both hold on every component >= m
  bool ok = false;       // both hold on every component >= degree
};
InverseFormulaReport verify_inverse_formula(const Polynomial& f, long T);

/// The polynomials P_i of the congruence above, i = 0..n-1.
std::vector<Polynomial> inverse_formula_polys(const Polynomial& f);

/// b = (s*)^i (1-s*s) s^j f(s)^{-1} (1-ss*) (s*)^k; component n should be the
/// single entry beta_{n-j} at (n+1-i, k+1), beta the power-series
/// coefficients of 1/f.
struct BasisProbeReport {
  long i = 0, k = 0, j = 0;
  Polynomial f;
  std::vector<char> holds;  // per component
  bool ok = false;
};
BasisProbeReport basis_independence_probe(long i, long k, long j, const Polynomial& f, long T);

}  // namespace fimalg
