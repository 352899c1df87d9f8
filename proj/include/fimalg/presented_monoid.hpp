#pragma once

// Finitely presented commutative monoids: a bounded congruence-closure oracle
// for any presentation, and canonical forms for the monoid M with generators
// x_n, y_n, z_n, a_n and its quotient by the pedestal.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fimalg/rational.hpp"

namespace fimalg {

/// A search ran past its configured state budget.
struct ResourceBoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Generator symbol with an index; index -1 marks an unindexed symbol.
struct Symbol {
  std::string name;
  long index = -1;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
  [[nodiscard]] std::string str() const;
};

/// Finite multiset of generators.
class MWord {
 public:
  MWord() = default;
  MWord(std::initializer_list<std::pair<Symbol, long>> terms);

  static MWord gen(const std::string& name, long index, long mult = 1);
  static MWord x(long n, long k = 1) { return gen("x", n, k); }
  static MWord y(long n, long k = 1) { return gen("y", n, k); }
  static MWord z(long n, long k = 1) { return gen("z", n, k); }
  static MWord a(long n, long k = 1) { return gen("a", n, k); }
  /// x_0 + y_0
  static MWord order_unit() { return x(0) + y(0); }

  /// [["x",0,1],["y",0,1]]; throws std::invalid_argument.
  static MWord from_json(std::string_view text);
  [[nodiscard]] std::string to_json() const;

  [[nodiscard]] const std::map<Symbol, long>& terms() const { return terms_; }
  [[nodiscard]] long count(const Symbol& s) const;
  [[nodiscard]] long size() const;
  [[nodiscard]] long max_index() const;
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] std::string str() const;

  void add(const Symbol& s, long mult);
  friend MWord operator+(MWord a, const MWord& b);
  friend bool operator==(const MWord&, const MWord&) = default;
  friend auto operator<=>(const MWord&, const MWord&) = default;

 private:
  std::map<Symbol, long> terms_;
};

/// Multiplicities indexed by generator position in a presentation.
using CountVec = std::vector<std::uint8_t>;

struct MonoidPresentation {
  std::vector<Symbol> generators;
  std::vector<std::pair<CountVec, CountVec>> relations;
  long index_bound = 0;

  /// Position of a generator, or -1.
  [[nodiscard]] long find(const Symbol& s) const;
  /// Throws std::invalid_argument for generators outside the presentation.
  [[nodiscard]] CountVec encode(const MWord& w) const;
  [[nodiscard]] MWord decode(const CountVec& c) const;
};

/// M with the index schemas instantiated for 0 <= l < index_bound:
/// x_0+y_0 = x_0+z_0, y_l = y_{l+1}+a_{l+1}, z_l = z_{l+1}+a_{l+1},
/// x_l = x_{l+1}+y_{l+1} = x_{l+1}+z_{l+1}.
MonoidPresentation m_presentation(long index_bound);

/// Graph monoid: generators are the vertices, one relation v = sum r(e)
/// per group X of the partition of the edges leaving v. Input:
/// {"vertices": ["v", ...], "edges": [["v","w"], ...],
///  "partition": {"v": [[0, 1], [2]], ...}} with edges referred to by position.
MonoidPresentation graph_monoid_presentation(std::string_view json_text);

enum class OracleResult { Equal, NotFoundWithinBounds };

/// Breadth-first closure from w1 applying each relation in both directions,
/// visiting only words of total size <= max_size whose generators have index
/// <= max_index. Equal is sound; NotFoundWithinBounds is only evidence.
/// Throws ResourceBoundExceeded beyond state_limit visited words.
OracleResult oracle_equiv(const MonoidPresentation& pres, const MWord& w1, const MWord& w2,
                          long max_size, long max_index, std::size_t state_limit = 20'000'000);

/// Every word reachable from w within the same bounds.
std::vector<CountVec> oracle_component(const MonoidPresentation& pres, const CountVec& w, long max_size,
                                       long max_index, std::size_t state_limit = 20'000'000);

/// p x_N + q y_N + r z_N + sum alpha_i a_i.
struct CanonicalM {
  long level = 0;
  long p = 0, q = 0, r = 0;
  std::map<long, long> alpha;
  friend bool operator==(const CanonicalM&, const CanonicalM&) = default;
  [[nodiscard]] MWord word() const;
  [[nodiscard]] std::string str() const;
};

CanonicalM canonicalize_M(const MWord& w);
bool equals_M(const MWord& w1, const MWord& w2);
CanonicalM add_M(const CanonicalM& c1, const CanonicalM& c2);

/// Homomorphism with every generator of index n sent to 2^{-n}.
Rational state_value(const MWord& w);

/// r xbar_n + s ybar + t zbar.
struct CanonicalMbar {
  long r = 0, n = 0, s = 0, t = 0;
  friend bool operator==(const CanonicalMbar&, const CanonicalMbar&) = default;
  [[nodiscard]] std::string str() const;
};

CanonicalMbar canonicalize_Mbar(long r, long n, long s, long t);
CanonicalMbar mbar_project(const MWord& w);
CanonicalMbar add_Mbar(const CanonicalMbar& a, const CanonicalMbar& b);

/// Candidate words for the bounded searches below.
struct SearchBounds {
  long level = 2;
  long size = 3;
};

/// All words of size <= size with generators x_n, y_n, z_n (0 <= n <= level)
/// and a_n (1 <= n <= level), ordered by size then lexicographically.
std::vector<MWord> enumerate_words(long level, long size);

/// Some d with w1 + d = w2, searched among words within the bounds.
std::optional<MWord> le_bounded(const MWord& w1, const MWord& w2, SearchBounds b = {});

/// [[z11, z12], [z21, z22]] with z11+z12 = w1a, z21+z22 = w1b,
/// z11+z21 = w2a, z12+z22 = w2b.
using Refinement = std::array<std::array<MWord, 2>, 2>;
std::optional<Refinement> refine_bounded(const MWord& w1a, const MWord& w1b, const MWord& w2a,
                                         const MWord& w2b, SearchBounds b = {});

struct PropertyCounterexample {
  std::string property;
  std::string detail;
};

struct PropertyBatteryReport {
  long size_bound = 0, index_bound = 0;
  std::size_t cancellation_checks = 0;
  std::size_t decomposition_checks = 0;
  std::size_t existence_checks = 0;
  std::size_t existence_unresolved = 0;  // bounded search found no witness
  std::vector<PropertyCounterexample> counterexamples;
  [[nodiscard]] bool ok() const { return counterexamples.empty(); }
};

/// Over all words of size <= size_bound and index <= index_bound:
/// (1) a + s = b + s with s in the pedestal forces a = b;
/// (2) a + s = b + t with s, t in the pedestal of disjoint support gives
///     a = c + t and b = c + s;
/// (3) for v in the pedestal, c = d + w with w in the pedestal and no a_i
///     below d for i in the support of v + w.
PropertyBatteryReport property_battery_M(long size_bound = 2, long index_bound = 2);

}  // namespace fimalg
