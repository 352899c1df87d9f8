#pragma once

// The monogenic free inverse monoid, modelled by Munn walk triples.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fimalg {

/// Reduced element of the free inverse monoid on {s}: the lattice walk of any
/// representing word in s (step +1) and s* (step -1) visits [lo, hi] and stops
/// at end.
struct MunnTriple {
  long lo = 0;
  long hi = 0;
  long end = 0;

  static MunnTriple identity() { return {}; }
  static MunnTriple s() { return {0, 1, 1}; }
  static MunnTriple s_star() { return {-1, 0, -1}; }

  /// Throws std::invalid_argument unless lo <= 0 <= hi and lo <= end <= hi.
  static MunnTriple make(long lo, long hi, long end);

  [[nodiscard]] bool valid() const { return lo <= 0 && 0 <= hi && lo <= end && end <= hi; }
  [[nodiscard]] bool is_idempotent() const { return end == 0; }
  [[nodiscard]] bool is_identity() const { return lo == 0 && hi == 0 && end == 0; }

  friend MunnTriple operator*(const MunnTriple& a, const MunnTriple& b) {
    return {std::min(a.lo, a.end + b.lo), std::max(a.hi, a.end + b.hi), a.end + b.end};
  }
  friend bool operator==(const MunnTriple&, const MunnTriple&) = default;
  friend auto operator<=>(const MunnTriple&, const MunnTriple&) = default;
};

/// s^k (s*)^l s^m with l >= k, l >= m.
struct NormalWord {
  long k = 0;
  long l = 0;
  long m = 0;

  static NormalWord make(long k, long l, long m);
  friend bool operator==(const NormalWord&, const NormalWord&) = default;
};

MunnTriple star(const MunnTriple& a);
NormalWord to_normal(const MunnTriple& a);
MunnTriple from_normal(const NormalWord& w);
MunnTriple pow(const MunnTriple& a, unsigned e);

/// Folds the letters of a word over {s, S} (S = s*) by walking the lattice
/// step by step, independently of operator*. Throws on other characters.
MunnTriple word_oracle(std::string_view letters);

/// Display form "s^k s*^l s^m" with zero exponents omitted, "1" for identity.
std::string to_string(const MunnTriple& a);

/// Shortest representing word over {s, S}.
std::string to_word(const MunnTriple& a);

/// Words over {s, S} of length <= max_len grouped into classes of the
/// congruence generated by ss*s = s, s*ss* = s* and pq = qp for p, q in
/// {s^i s*^i, s*^j s^j}. The closure only visits words of length
/// <= max_len + slack, so the partition can be finer than the true one.
struct RewritingPartition {
  std::vector<std::string> words;        // all words of length <= max_len
  std::vector<std::size_t> class_of;     // parallel to words
  std::size_t class_count = 0;
};
RewritingPartition rewriting_oracle(unsigned max_len, unsigned slack);

}  // namespace fimalg

template <>
struct std::hash<fimalg::MunnTriple> {
  std::size_t operator()(const fimalg::MunnTriple& t) const noexcept {
    std::size_t h = std::hash<long>{}(t.lo);
    h = h * 1000003U ^ std::hash<long>{}(t.hi);
    h = h * 1000003U ^ std::hash<long>{}(t.end);
    return h;
  }
};
