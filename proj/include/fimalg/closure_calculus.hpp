#pragma once

// Expressions over s, s*, scalars, Sigma-inverses and central psi-elements,
// evaluated componentwise at a truncation, plus the identity checks built on
// them.

#include <memory>
#include <string>
#include <vector>

#include "fimalg/polynomial.hpp"
#include "fimalg/rational_series.hpp"
#include "fimalg/representation.hpp"

namespace fimalg {

/// Immutable expression tree. Copies share structure.
class ClosureExpr {
 public:
  enum class Kind { S, Scalar, Psi, Add, Sub, Mul, Neg, Inv, Adj };

  ClosureExpr() : ClosureExpr(scalar(Rational(0))) {}

  static ClosureExpr s();
  static ClosureExpr s_star() { return adj(s()); }
  static ClosureExpr scalar(const Rational& c);
  /// psi of a series; the label is what str() prints inside psi(...).
  static ClosureExpr psi(const RationalSeries& a);
  static ClosureExpr psi(const QFraction& q, std::string label);
  static ClosureExpr inv(const ClosureExpr& e);
  static ClosureExpr adj(const ClosureExpr& e);
  /// f(x) by Horner.
  static ClosureExpr poly(const Polynomial& f, const ClosureExpr& x);
  /// num(x) inv(den(x)) for a series with den(0) = 1.
  static ClosureExpr series_at(const RationalSeries& a, const ClosureExpr& x);

  [[nodiscard]] Kind kind() const { return node_->kind; }
  [[nodiscard]] const Rational& value() const { return node_->value; }
  [[nodiscard]] const QFraction& psi_arg() const { return *node_->psi; }
  [[nodiscard]] const std::string& psi_label() const { return node_->label; }
  [[nodiscard]] const ClosureExpr& lhs() const { return node_->args.at(0); }
  [[nodiscard]] const ClosureExpr& rhs() const { return node_->args.at(1); }

  /// Fully parenthesised only where precedence needs it; parse(str()) gives
  /// back the same tree.
  [[nodiscard]] std::string str() const;

  friend ClosureExpr operator+(const ClosureExpr& a, const ClosureExpr& b);
  friend ClosureExpr operator-(const ClosureExpr& a, const ClosureExpr& b);
  friend ClosureExpr operator*(const ClosureExpr& a, const ClosureExpr& b);
  friend ClosureExpr operator-(const ClosureExpr& a);
  /// Structural equality.
  friend bool operator==(const ClosureExpr& a, const ClosureExpr& b);

 private:
  struct Node {
    Kind kind = Kind::Scalar;
    Rational value;
    std::shared_ptr<const QFraction> psi;
    std::string label;
    std::vector<ClosureExpr> args;
  };
  explicit ClosureExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static ClosureExpr make(Kind k, std::vector<ClosureExpr> args);
  std::shared_ptr<const Node> node_;
};

/// Componentwise value at truncation T. Throws SingularComponent from inv.
TruncatedRep eval(const ClosureExpr& e, long T);

struct IdentityCheck {
  std::string name;
  bool holds = false;
  long first_failure = -1;  // component index, -1 when it holds
};

struct RankCheck {
  std::string name;
  Rational expected;
  RankResult result;
  bool holds = false;
};

struct ClosureReport {
  long T = 0;
  std::vector<IdentityCheck> checks;
  std::vector<RankCheck> ranks;
  [[nodiscard]] bool ok() const;
};

IdentityCheck check_equal(std::string name, const ClosureExpr& lhs, const ClosureExpr& rhs, long T);

/// (1-ss*)(1-s*)^{-1}(1-s*s)(1-s)^{-1}(1-ss*) = 1-ss*, its mirror, and
/// uv = vu = 1.
ClosureReport verify_equivalence_identities(long T);

/// (1-ss*) A(s)* (1-s*s) B(s) (1-ss*) = psi(conj(A) (.) B)(1-ss*) and
/// (1-s*s) A(s) (1-ss*) B(s)* (1-s*s) = psi(A (.) conj(B))(1-s*s).
ClosureReport verify_hadamard_identity(const RationalSeries& a, const RationalSeries& b, long T);

/// A term of one of the shapes
///   A: f^{-1} s^i (1-ss*) (s*)^j
///   B: (s*)^i (1-s*s) s^j f^{-1}
///   C: (s*)^i (1-s*s) s^j f^{-1} (1-ss*) (s*)^k
///   D: a socle element (the matrix unit e_{i,j} of h_k A)
///   Z: zero
struct TermSample {
  char form = 'A';
  long i = 0, j = 0, k = 0;
  Polynomial f = Polynomial(1);
  [[nodiscard]] ClosureExpr expr() const;
  [[nodiscard]] std::string str() const;
};

struct TermProbeCase {
  std::string sample;
  std::string multiplier;
  bool representable = false;
  long cutoff = 0;  // components <= cutoff are treated as socle and ignored
  std::vector<std::pair<std::string, Rational>> combination;
  std::size_t residual_entries = 0;  // nonzero entries left after reduction
};

struct TermProbeReport {
  long T = 0;
  std::size_t dictionary_size = 0;
  std::vector<TermProbeCase> cases;
  [[nodiscard]] bool ok() const;
};

/// Multiplies each sample on the right by s, s* and inv(g(s)) and solves for
/// the product in the span of A/B/C terms (exponents up to the sample
/// exponents plus two, f ranging over the sample's f and f g) on components
/// in (T/2, T], the lower components being absorbed by the socle.
TermProbeReport term_form_closure_probe(const std::vector<TermSample>& samples,
                                        const Polynomial& g, long T);

/// Membership of `target` in the span of `dictionary` on components
/// (cutoff, T].
TermProbeCase solve_in_span(const TruncatedRep& target,
                            const std::vector<std::pair<std::string, TruncatedRep>>& dictionary,
                            long cutoff);

/// The product of a form-A and a form-B term vanishes on every component
/// beyond j_A + i_B.
struct IdealProductCheck {
  std::string a, b;
  long predicted_bound = 0;
  long last_nonzero = -1;
  bool holds = false;
};
IdealProductCheck ideal_product_probe(const TermSample& a, const TermSample& b, long T);

/// psi(a (.) b) = psi(a) psi(b) on every component.
IdentityCheck psi_homomorphism_check(const RationalSeries& a, const RationalSeries& b, long T);

/// The decomposition of s + s* with g1 = psi(1/(1-x^2)), g2 = 1 - g1.
ClosureReport example_suite_s_plus_sstar(long T);

}  // namespace fimalg
