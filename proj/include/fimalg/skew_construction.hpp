#pragma once

// The matrices w_n, w_n* of the skew construction in M_n(Q), driven by a
// finite prefix f_1, ..., f_m of an enumeration of {f : f(0) = 1}.

#include <string>
#include <string_view>
#include <vector>

#include "fimalg/exact_linalg.hpp"
#include "fimalg/polynomial.hpp"

namespace fimalg {

class SigmaSchedule {
 public:
  /// f_1..f_m, each with f(0) = 1. With pad = true the enumeration is
  /// continued by f = 1, so every n is classified; otherwise n >= M(m+1)
  /// is out of coverage.
  explicit SigmaSchedule(std::vector<Polynomial> fs, bool pad = true);

  /// JSON list of coefficient arrays (constant term first), entries integers
  /// or "p/q" strings.
  static SigmaSchedule from_json(std::string_view text, bool pad = true);

  [[nodiscard]] const std::vector<Polynomial>& polys() const { return fs_; }
  [[nodiscard]] bool padded() const { return pad_; }
  /// f_0 f_1 ... f_k
  [[nodiscard]] Polynomial F(long k) const;
  [[nodiscard]] long N(long k) const { return F(k).degree(); }
  /// M(0) = 1, M(k) = max(M(k-1) + 1, 2(k+1)N(k)).
  [[nodiscard]] long M(long k) const;
  /// k with M(k) <= n < M(k+1); 0 below M(1). Throws std::out_of_range past
  /// coverage of an unpadded schedule.
  [[nodiscard]] long regime(long n) const;
  /// Least k >= k_min with M(k) > bound and g dividing F(k).
  [[nodiscard]] long least_k(long bound, const Polynomial& g = Polynomial(1), long k_min = 1) const;
  [[nodiscard]] std::string str() const;

 private:
  std::vector<Polynomial> fs_;
  bool pad_ = true;
};

struct SkewPair {
  long n = 0;
  long regime = 0;
  ExactMatrix w, wstar;
  ExactMatrix one_minus_wws;  // 1 - w w*
  ExactMatrix one_minus_wsw;  // 1 - w* w
};

SkewPair build_pair(long n, const SigmaSchedule& sched);

/// Outcome of one identity over a range of n.
struct StabilityCheck {
  std::string name;
  long n_lo = 0, n_hi = 0;
  long stabilizes_from = -1;    // least n with the identity on [n, n_hi]; -1 if it fails at n_hi
  long proof_threshold = 0;     // sufficient bound derived from the proof
  bool threshold_sufficient = false;
  std::vector<long> failures;   // every n in range where it fails
  [[nodiscard]] bool tight() const { return stabilizes_from == proof_threshold; }
};

struct WnLemmaReport {
  std::vector<StabilityCheck> checks;
  [[nodiscard]] bool ok() const;
};

/// Parts (a)-(f) for all exponents <= exponent_bound and n in [n_lo, n_hi].
WnLemmaReport verify_wn_lemma(const SigmaSchedule& sched, const std::string& parts, long exponent_bound,
                              long n_lo, long n_hi);

/// (1 - w^i w*^i)(1 - w*^j w^j) = (1 - w*^j w^j)(1 - w^i w*^i) = 0. Throws
/// std::invalid_argument unless i, j >= 1.
StabilityCheck verify_stabilization(const SigmaSchedule& sched, long i, long j, long n_lo, long n_hi);

/// A word in w, w*, g(w)^{-1}, 1 - w w*, 1 - w* w.
struct RecipeToken {
  enum Kind { W, WStar, GInv, P, Q } kind = W;
  Polynomial g = Polynomial(1);
};
using Recipe = std::vector<RecipeToken>;

/// "w", "w*", "inv(1+x)", "P" (= 1 - ww*), "Q" (= 1 - w*w), separated by
/// spaces, e.g. "w* w inv(1+x) P w*".
Recipe parse_recipe(std::string_view text);
std::string recipe_str(const Recipe& r);
ExactMatrix eval_recipe(const Recipe& r, const SkewPair& p);

struct CornerReport {
  std::string recipe;
  char ideal = '1';  // '1': upper-left corner, '2': lower-right, 'S': vanishes
  StabilityCheck check;
};

/// Nonzero entries of z_n in the upper left (resp. lower right) corner of
/// size < n/2, or z_n = 0 when the recipe has both 1-ww* and 1-w*w. The
/// proof threshold is M(k0) with k0 >= 6, M(k0) > 14 (number of w, w*
/// letters) and every inverted g dividing F(k0).
CornerReport corner_support_probe(const SigmaSchedule& sched, const Recipe& r, long n_lo, long n_hi);

struct NamedCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct StandDecomReport {
  long n = 0;
  bool hypotheses = false;
  std::vector<NamedCheck> checks;
  [[nodiscard]] bool ok() const;
};

/// Checks a a* a = a, a* a a* = a* and the orthogonality hypotheses up to n,
/// then the commutation, chain, orthogonality and shift relations of f_k,
/// g_k.
StandDecomReport standdecom_check(const ExactMatrix& a, const ExactMatrix& astar, long n);

struct TauRankReport {
  long n = 0, T = 0;
  std::vector<long> K;  // K_1..K_n
  std::vector<NamedCheck> checks;
  [[nodiscard]] bool ok() const;
};

/// Scans K_1 < ... < K_n over components t <= T and checks the rank
/// identities behind the relations of tau(x_m), tau(y_m), tau(z_m),
/// tau(a_m) for m <= n.
TauRankReport tau_rank_identities(const SigmaSchedule& sched, long n, long T);

}  // namespace fimalg
