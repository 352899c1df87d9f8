#include "fimalg/free_inverse_monoid.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace fimalg {

MunnTriple MunnTriple::make(long lo, long hi, long end) {
  MunnTriple t{lo, hi, end};
  if (!t.valid())
    throw std::invalid_argument("invalid Munn triple (" + std::to_string(lo) + "," +
                                std::to_string(hi) + "," + std::to_string(end) + ")");
  return t;
}

NormalWord NormalWord::make(long k, long l, long m) {
  if (k < 0 || m < 0 || l < k || l < m)
    throw std::invalid_argument("normal word needs l >= k >= 0 and l >= m >= 0");
  return {k, l, m};
}

MunnTriple star(const MunnTriple& a) { return {a.lo - a.end, a.hi - a.end, -a.end}; }

NormalWord to_normal(const MunnTriple& a) { return {a.hi, a.hi - a.lo, a.end - a.lo}; }

MunnTriple from_normal(const NormalWord& w) {
  // Walk up k, down l, up m.
  return {w.k - w.l, w.k, w.k - w.l + w.m};
}

MunnTriple pow(const MunnTriple& a, unsigned e) {
  MunnTriple r;
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

MunnTriple word_oracle(std::string_view letters) {
  MunnTriple t;
  long pos = 0;
  for (char c : letters) {
    if (c == 's')
      ++pos;
    else if (c == 'S')
      --pos;
    else
      throw std::invalid_argument(std::string("unexpected letter '") + c + "'");
    t.lo = std::min(t.lo, pos);
    t.hi = std::max(t.hi, pos);
  }
  t.end = pos;
  return t;
}

std::string to_string(const MunnTriple& a) {
  NormalWord w = to_normal(a);
  std::string out;
  auto part = [&](const char* sym, long e) {
    if (e == 0) return;
    if (!out.empty()) out += ' ';
    out += sym;
    if (e != 1) out += "^" + std::to_string(e);
  };
  part("s", w.k);
  part("s*", w.l);
  part("s", w.m);
  return out.empty() ? "1" : out;
}

std::string to_word(const MunnTriple& a) {
  // Visit the nearer extreme first, then the other, then walk to end.
  std::string up_first = std::string(a.hi, 's') + std::string(a.hi - a.lo, 'S') +
                         std::string(a.end - a.lo, 's');
  std::string down_first = std::string(-a.lo, 'S') + std::string(a.hi - a.lo, 's') +
                           std::string(a.hi - a.end, 'S');
  return up_first.size() <= down_first.size() ? up_first : down_first;
}

namespace {

struct Pattern {
  unsigned len;
  std::uint32_t bits;  // bit i set iff letter i is S
};

Pattern encode(std::string_view w) {
  Pattern p{static_cast<unsigned>(w.size()), 0};
  for (unsigned i = 0; i < w.size(); ++i)
    if (w[i] == 'S') p.bits |= 1U << i;
  return p;
}

std::size_t word_id(unsigned len, std::uint32_t bits) { return (std::size_t{1} << len) - 1 + bits; }

std::size_t find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

RewritingPartition rewriting_oracle(unsigned max_len, unsigned slack) {
  const unsigned total = max_len + slack;
  if (total > 24) throw std::invalid_argument("rewriting oracle bound too large");

  std::vector<std::pair<Pattern, Pattern>> rules;
  rules.push_back({encode("sSs"), encode("s")});
  rules.push_back({encode("SsS"), encode("S")});
  std::vector<std::string> projections;
  for (unsigned i = 1; 2 * i < total; ++i) {
    projections.push_back(std::string(i, 's') + std::string(i, 'S'));
    projections.push_back(std::string(i, 'S') + std::string(i, 's'));
  }
  for (std::size_t a = 0; a < projections.size(); ++a)
    for (std::size_t b = a + 1; b < projections.size(); ++b)
      if (projections[a].size() + projections[b].size() <= total)
        rules.push_back({encode(projections[a] + projections[b]),
                         encode(projections[b] + projections[a])});

  std::vector<std::size_t> parent(word_id(total + 1, 0));
  std::iota(parent.begin(), parent.end(), std::size_t{0});

  for (unsigned len = 0; len <= total; ++len) {
    for (std::uint32_t bits = 0; bits < (1U << len); ++bits) {
      for (const auto& [lhs, rhs] : rules) {
        if (lhs.len > len) continue;
        const std::uint32_t mask = (1U << lhs.len) - 1;
        for (unsigned pos = 0; pos + lhs.len <= len; ++pos) {
          if (((bits >> pos) & mask) != lhs.bits) continue;
          const unsigned new_len = len - lhs.len + rhs.len;
          if (new_len > total) continue;
          std::uint32_t low = bits & ((1U << pos) - 1);
          std::uint32_t high = bits >> (pos + lhs.len);
          std::uint32_t nb = low | (rhs.bits << pos) | (high << (pos + rhs.len));
          std::size_t x = find(parent, word_id(len, bits));
          std::size_t y = find(parent, word_id(new_len, nb));
          if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
      }
    }
  }

  RewritingPartition out;
  std::unordered_map<std::size_t, std::size_t> class_index;
  for (unsigned len = 0; len <= max_len; ++len) {
    for (std::uint32_t bits = 0; bits < (1U << len); ++bits) {
      std::string w(len, 's');
      for (unsigned i = 0; i < len; ++i)
        if (bits & (1U << i)) w[i] = 'S';
      std::size_t root = find(parent, word_id(len, bits));
      auto [it, inserted] = class_index.emplace(root, class_index.size());
      out.words.push_back(std::move(w));
      out.class_of.push_back(it->second);
    }
  }
  out.class_count = class_index.size();
  return out;
}

}  // namespace fimalg
