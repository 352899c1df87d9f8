#pragma once

// The group algebra Q[Z_2 wr Z] and the embedding of A given by s -> e_0 t.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fimalg/rational.hpp"
#include "fimalg/semigroup_algebra.hpp"

namespace fimalg {

/// (prod_{i in lamps} a_i) t^shift, with t^{-1} a_i t = a_{i+1}.
struct LampElem {
  std::vector<long> lamps;  // sorted, distinct
  long shift = 0;

  static LampElem identity() { return {}; }
  static LampElem t(long k = 1) { return {{}, k}; }
  static LampElem a(long i) { return {{i}, 0}; }
  /// Throws std::invalid_argument on malformed input.
  static LampElem make(std::vector<long> lamps, long shift);

  /// "a(-1) a(0) t^3"; "1" for the identity. parse also accepts "t^-2",
  /// "t^(-2)" and repeated factors in any order.
  static LampElem parse(std::string_view text);
  [[nodiscard]] std::string str() const;
  /// {"lamps": [...], "shift": k}
  static LampElem from_json(std::string_view text);
  [[nodiscard]] std::string to_json() const;

  [[nodiscard]] bool is_identity() const { return lamps.empty() && shift == 0; }
  [[nodiscard]] LampElem inverse() const;

  friend bool operator==(const LampElem&, const LampElem&) = default;
  friend auto operator<=>(const LampElem&, const LampElem&) = default;
};

LampElem group_mul(const LampElem& g, const LampElem& h);

class GroupAlgElem {
 public:
  using Terms = std::map<LampElem, Rational>;

  GroupAlgElem() = default;
  GroupAlgElem(Rational c);  // NOLINT(google-explicit-constructor)
  explicit GroupAlgElem(const LampElem& g, Rational c = 1);

  /// (1 + a_i)/2
  static GroupAlgElem e(long i);
  /// (1 - a_i)/2
  static GroupAlgElem f(long i);
  static GroupAlgElem t(long k = 1) { return GroupAlgElem(LampElem::t(k)); }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Rational coeff(const LampElem& g) const;
  [[nodiscard]] std::string str() const;

  GroupAlgElem& operator+=(const GroupAlgElem& o);
  GroupAlgElem& operator-=(const GroupAlgElem& o);
  friend GroupAlgElem operator+(GroupAlgElem a, const GroupAlgElem& b) { return a += b; }
  friend GroupAlgElem operator-(GroupAlgElem a, const GroupAlgElem& b) { return a -= b; }
  friend GroupAlgElem operator*(const Rational& c, const GroupAlgElem& a);
  friend bool operator==(const GroupAlgElem&, const GroupAlgElem&) = default;

 private:
  void add_term(const LampElem& g, const Rational& c);
  Terms terms_;
};

GroupAlgElem alg_mul(const GroupAlgElem& x, const GroupAlgElem& y);
inline GroupAlgElem operator*(const GroupAlgElem& x, const GroupAlgElem& y) { return alg_mul(x, y); }
/// g -> g^{-1}; coefficients are rational, so conjugation is trivial.
GroupAlgElem alg_star(const GroupAlgElem& x);

GroupAlgElem embed_A(const AlgebraElem& a);
GroupAlgElem embed_A(const MunnTriple& m);

/// Coefficient of the identity element.
Rational trace(const GroupAlgElem& x);

struct EmbeddingCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct EmbeddingReport {
  long bound = 0;
  std::vector<EmbeddingCheck> checks;
  [[nodiscard]] bool ok() const;
};

/// For i + j <= bound: phi(q_{-i,j}) = f_{-i} e_{-i+1} ... e_j f_{j+1}, its
/// idempotence and trace 2^{-(i+j+2)}; for n <= bound: trace phi(h_n) =
/// (n+1) 2^{-(n+2)} and the partial sums; traces of s s*, s* s, s^i s*^i.
/// Every trace is compared with vn_rank of the truncated representation.
EmbeddingReport verify_embedding_suite(long bound, long T = 64);

}  // namespace fimalg
