#include "fimalg/presented_monoid.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_set>

namespace fimalg {

using nlohmann::json;

std::string Symbol::str() const { return index < 0 ? name : name + "_" + std::to_string(index); }

MWord::MWord(std::initializer_list<std::pair<Symbol, long>> terms) {
  for (const auto& [s, m] : terms) add(s, m);
}

MWord MWord::gen(const std::string& name, long index, long mult) {
  MWord w;
  w.add({name, index}, mult);
  return w;
}

void MWord::add(const Symbol& s, long mult) {
  if (mult < 0) throw std::invalid_argument("negative multiplicity for " + s.str());
  if (mult == 0) return;
  terms_[s] += mult;
}

MWord operator+(MWord a, const MWord& b) {
  for (const auto& [s, m] : b.terms_) a.add(s, m);
  return a;
}

long MWord::count(const Symbol& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? 0 : it->second;
}

long MWord::size() const {
  long n = 0;
  for (const auto& [s, m] : terms_) n += m;
  return n;
}

long MWord::max_index() const {
  long n = -1;
  for (const auto& [s, m] : terms_) n = std::max(n, s.index);
  return n;
}

std::string MWord::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, m] : terms_) {
    if (!out.empty()) out += " + ";
    if (m != 1) out += std::to_string(m);
    out += s.str();
  }
  return out;
}

MWord MWord::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("word JSON: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("word JSON must be an array of [symbol, index, multiplicity]");
  MWord w;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_number_integer() ||
        !t[2].is_number_integer())
      throw std::invalid_argument("word JSON entry must be [symbol, index, multiplicity]: " + t.dump());
    w.add({t[0].get<std::string>(), t[1].get<long>()}, t[2].get<long>());
  }
  return w;
}

std::string MWord::to_json() const {
  json j = json::array();
  for (const auto& [s, m] : terms_) j.push_back({s.name, s.index, m});
  return j.dump();
}

long MonoidPresentation::find(const Symbol& s) const {
  auto it = std::find(generators.begin(), generators.end(), s);
  return it == generators.end() ? -1 : static_cast<long>(it - generators.begin());
}

CountVec MonoidPresentation::encode(const MWord& w) const {
  CountVec c(generators.size(), 0);
  for (const auto& [s, m] : w.terms()) {
    long g = find(s);
    if (g < 0) throw std::invalid_argument("generator " + s.str() + " is not in the presentation");
    if (c[static_cast<std::size_t>(g)] + m > 255) throw ResourceBoundExceeded("multiplicity above 255");
    c[static_cast<std::size_t>(g)] = static_cast<std::uint8_t>(c[static_cast<std::size_t>(g)] + m);
  }
  return c;
}

MWord MonoidPresentation::decode(const CountVec& c) const {
  MWord w;
  for (std::size_t g = 0; g < c.size(); ++g) w.add(generators[g], c[g]);
  return w;
}

MonoidPresentation m_presentation(long index_bound) {
  MonoidPresentation p;
  p.index_bound = index_bound;
  for (long n = 0; n <= index_bound; ++n) {
    for (const char* s : {"x", "y", "z"}) p.generators.push_back({s, n});
    if (n >= 1) p.generators.push_back({"a", n});
  }
  auto rel = [&](const MWord& l, const MWord& r) { p.relations.emplace_back(p.encode(l), p.encode(r)); };
  rel(MWord::x(0) + MWord::y(0), MWord::x(0) + MWord::z(0));
  for (long l = 0; l < index_bound; ++l) {
    rel(MWord::y(l), MWord::y(l + 1) + MWord::a(l + 1));
    rel(MWord::z(l), MWord::z(l + 1) + MWord::a(l + 1));
    rel(MWord::x(l), MWord::x(l + 1) + MWord::y(l + 1));
    rel(MWord::x(l), MWord::x(l + 1) + MWord::z(l + 1));
  }
  return p;
}

MonoidPresentation graph_monoid_presentation(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("graph JSON: ") + e.what());
  }
  MonoidPresentation p;
  for (const auto& v : j.at("vertices")) p.generators.push_back({v.get<std::string>(), -1});
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  for (const auto& [src, rng] : edges)
    if (p.find({src, -1}) < 0 || p.find({rng, -1}) < 0)
      throw std::invalid_argument("edge " + src + " -> " + rng + " uses an unknown vertex");
  if (j.contains("partition")) {
    for (const auto& [v, groups] : j.at("partition").items()) {
      if (p.find({v, -1}) < 0) throw std::invalid_argument("partition for unknown vertex " + v);
      for (const auto& g : groups) {
        MWord rhs;
        for (const auto& id : g) {
          auto k = id.get<std::size_t>();
          if (k >= edges.size()) throw std::invalid_argument("edge id out of range in partition");
          if (edges[k].first != v) throw std::invalid_argument("edge " + std::to_string(k) + " does not leave " + v);
          rhs.add({edges[k].second, -1}, 1);
        }
        p.relations.emplace_back(p.encode(MWord::gen(v, -1)), p.encode(rhs));
      }
    }
  }
  return p;
}

namespace {

struct SparseRel {
  std::vector<std::pair<std::size_t, std::uint8_t>> take, give;
  long delta = 0;
};

std::string key_of(const CountVec& c) { return {c.begin(), c.end()}; }

// BFS over the reachable set; stops early when `stop` returns true.
template <typename Stop>
std::vector<CountVec> explore(const MonoidPresentation& pres, const CountVec& start, long max_size, long max_index,
                              std::size_t state_limit, Stop stop) {
  std::vector<char> allowed(pres.generators.size());
  for (std::size_t g = 0; g < allowed.size(); ++g) allowed[g] = pres.generators[g].index <= max_index;
  std::vector<SparseRel> rels;
  for (const auto& [l, r] : pres.relations) {
    for (int dir = 0; dir < 2; ++dir) {
      const CountVec& from = dir == 0 ? l : r;
      const CountVec& to = dir == 0 ? r : l;
      SparseRel s;
      bool ok = true;
      for (std::size_t g = 0; g < from.size(); ++g) {
        if (from[g]) s.take.emplace_back(g, from[g]);
        if (to[g]) {
          s.give.emplace_back(g, to[g]);
          ok = ok && allowed[g];
        }
        s.delta += static_cast<long>(to[g]) - static_cast<long>(from[g]);
      }
      if (ok) rels.push_back(std::move(s));
    }
  }
  long size0 = 0;
  for (auto c : start) size0 += c;
  std::unordered_set<std::string> seen{key_of(start)};
  std::vector<CountVec> order{start};
  std::vector<long> sizes{size0};
  if (stop(start)) return order;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& r : rels) {
      const CountVec& w = order[head];
      long ns = sizes[head] + r.delta;
      if (ns > max_size) continue;
      bool fits = std::all_of(r.take.begin(), r.take.end(), [&](const auto& e) { return w[e.first] >= e.second; });
      if (!fits) continue;
      CountVec next = w;
      for (const auto& [g, m] : r.take) next[g] = static_cast<std::uint8_t>(next[g] - m);
      for (const auto& [g, m] : r.give) next[g] = static_cast<std::uint8_t>(next[g] + m);
      if (!seen.insert(key_of(next)).second) continue;
      if (seen.size() > state_limit)
        throw ResourceBoundExceeded("oracle visited more than " + std::to_string(state_limit) + " words");
      order.push_back(next);
      sizes.push_back(ns);
      if (stop(order.back())) return order;
    }
  }
  return order;
}

}  // namespace

OracleResult oracle_equiv(const MonoidPresentation& pres, const MWord& w1, const MWord& w2, long max_size,
                          long max_index, std::size_t state_limit) {
  if (max_size <= 0 || max_index < 0) throw std::invalid_argument("oracle bounds must be positive");
  CountVec a = pres.encode(w1), b = pres.encode(w2);
  if (a == b) return OracleResult::Equal;
  bool found = false;
  explore(pres, a, max_size, max_index, state_limit, [&](const CountVec& c) { return found = (c == b); });
  return found ? OracleResult::Equal : OracleResult::NotFoundWithinBounds;
}

std::vector<CountVec> oracle_component(const MonoidPresentation& pres, const CountVec& w, long max_size,
                                       long max_index, std::size_t state_limit) {
  return explore(pres, w, max_size, max_index, state_limit, [](const CountVec&) { return false; });
}

namespace {

long get(const std::map<long, long>& m, long k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

void set_count(std::map<long, long>& m, long k, long v) {
  if (v == 0)
    m.erase(k);
  else
    m[k] = v;
}

void normalise(CanonicalM& c) {
  auto z_to_y = [&] {
    if (c.p >= 1) {
      c.q += c.r;
      c.r = 0;
    }
  };
  z_to_y();
  // (N, p, q, r, alpha) -> (N-1, p, q-p, r, alpha - (q-p+r) a_N).
  while (c.level >= 1 && c.q >= c.p && get(c.alpha, c.level) >= c.q - c.p + c.r) {
    set_count(c.alpha, c.level, get(c.alpha, c.level) - (c.q - c.p + c.r));
    c.q -= c.p;
    --c.level;
    z_to_y();
  }
}

// Raises p x_N + q y_N + r z_N to level M >= N.
void raise(CanonicalM& c, long to) {
  for (long l = c.level; l < to; ++l) {
    // x_l = x_{l+1} + y_{l+1}, y_l = y_{l+1} + a_{l+1}, z_l = z_{l+1} + a_{l+1}
    set_count(c.alpha, l + 1, get(c.alpha, l + 1) + c.q + c.r);
    c.q += c.p;
  }
  c.level = std::max(c.level, to);
}

}  // namespace

CanonicalM canonicalize_M(const MWord& w) {
  long top = 0;
  for (const auto& [s, m] : w.terms()) {
    if (s.name == "a") {
      if (s.index < 1) throw std::invalid_argument("a_n needs n >= 1");
    } else if (s.name == "x" || s.name == "y" || s.name == "z") {
      if (s.index < 0) throw std::invalid_argument(s.name + " needs an index >= 0");
      top = std::max(top, s.index);
    } else {
      throw std::invalid_argument("symbol " + s.str() + " is not a generator of M");
    }
  }
  CanonicalM c;
  for (long l = 0; l <= top; ++l) {
    raise(c, l);
    c.p += w.count({"x", l});
    c.q += w.count({"y", l});
    c.r += w.count({"z", l});
  }
  for (const auto& [s, m] : w.terms())
    if (s.name == "a") set_count(c.alpha, s.index, get(c.alpha, s.index) + m);
  normalise(c);
  return c;
}

bool equals_M(const MWord& w1, const MWord& w2) { return canonicalize_M(w1) == canonicalize_M(w2); }

CanonicalM add_M(const CanonicalM& c1, const CanonicalM& c2) {
  CanonicalM a = c1, b = c2;
  long top = std::max(a.level, b.level);
  raise(a, top);
  raise(b, top);
  a.p += b.p;
  a.q += b.q;
  a.r += b.r;
  for (const auto& [i, m] : b.alpha) set_count(a.alpha, i, get(a.alpha, i) + m);
  normalise(a);
  return a;
}

MWord CanonicalM::word() const {
  MWord w = MWord::x(level, p) + MWord::y(level, q) + MWord::z(level, r);
  for (const auto& [i, m] : alpha) w = w + MWord::a(i, m);
  return w;
}

std::string CanonicalM::str() const {
  std::string out = "N=" + std::to_string(level) + " p=" + std::to_string(p) + " q=" + std::to_string(q) +
                    " r=" + std::to_string(r) + " alpha={";
  bool first = true;
  for (const auto& [i, m] : alpha) {
    out += (first ? "" : ",") + std::string("a_") + std::to_string(i) + (m == 1 ? "" : "^" + std::to_string(m));
    first = false;
  }
  return out + "}";
}

Rational state_value(const MWord& w) {
  Rational v(0);
  for (const auto& [s, m] : w.terms()) v += Rational(m) * Rational::pow2(-s.index);
  return v;
}

CanonicalMbar canonicalize_Mbar(long r, long n, long s, long t) {
  if (r < 0 || n < 0 || s < 0 || t < 0) throw std::invalid_argument("negative M-bar coordinates");
  if (r == 0) return {0, 0, s, t};
  s += t;
  // xbar_n + ybar = xbar_{n-1}
  while (n >= 1 && s >= r) {
    s -= r;
    --n;
  }
  return {r, n, s, 0};
}

CanonicalMbar mbar_project(const MWord& w) {
  canonicalize_M(w);  // validates the symbols
  long top = 0;
  for (const auto& [s, m] : w.terms())
    if (s.name == "x") top = std::max(top, s.index);
  long r = 0, ys = 0, zs = 0;
  for (const auto& [s, m] : w.terms()) {
    if (s.name == "x") {
      r += m;
      ys += m * (top - s.index);  // xbar_l = xbar_top + (top - l) ybar
    } else if (s.name == "y") {
      ys += m;
    } else if (s.name == "z") {
      zs += m;
    }
  }
  return canonicalize_Mbar(r, top, ys, zs);
}

CanonicalMbar add_Mbar(const CanonicalMbar& a, const CanonicalMbar& b) {
  if (a.r == 0) return canonicalize_Mbar(b.r, b.n, b.s + a.s, b.t + a.t);
  if (b.r == 0) return canonicalize_Mbar(a.r, a.n, a.s + b.s, a.t + b.t);
  long top = std::max(a.n, b.n);
  long s = a.s + b.s + a.r * (top - a.n) + b.r * (top - b.n);
  return canonicalize_Mbar(a.r + b.r, top, s, a.t + b.t);
}

std::string CanonicalMbar::str() const {
  return std::to_string(r) + " xbar_" + std::to_string(n) + " + " + std::to_string(s) + " ybar + " +
         std::to_string(t) + " zbar";
}

std::vector<MWord> enumerate_words(long level, long size) {
  std::vector<MWord> gens;
  for (long n = 0; n <= level; ++n) {
    gens.push_back(MWord::x(n));
    gens.push_back(MWord::y(n));
    gens.push_back(MWord::z(n));
    if (n >= 1) gens.push_back(MWord::a(n));
  }
  std::vector<MWord> out{MWord()};
  // Multisets of a given size as non-decreasing generator sequences.
  std::vector<std::pair<MWord, std::size_t>> layer{{MWord(), 0}};
  for (long k = 1; k <= size; ++k) {
    std::vector<std::pair<MWord, std::size_t>> next;
    for (const auto& [w, from] : layer)
      for (std::size_t g = from; g < gens.size(); ++g) next.emplace_back(w + gens[g], g);
    for (const auto& [w, g] : next) out.push_back(w);
    layer = std::move(next);
  }
  return out;
}

namespace {

struct Candidate {
  MWord word;
  Rational value;
  CanonicalM canon;
};

const std::vector<Candidate>& candidates(SearchBounds b) {
  static std::mutex mu;
  static std::map<std::pair<long, long>, std::vector<Candidate>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{b.level, b.size}];
  if (slot.empty())
    for (auto& w : enumerate_words(b.level, b.size)) {
      Rational v = state_value(w);
      CanonicalM c = canonicalize_M(w);
      slot.push_back({std::move(w), std::move(v), std::move(c)});
    }
  return slot;
}

}  // namespace

std::optional<MWord> le_bounded(const MWord& w1, const MWord& w2, SearchBounds b) {
  const Rational target = state_value(w2) - state_value(w1);
  if (target.sign() < 0) return std::nullopt;
  const CanonicalM c1 = canonicalize_M(w1), c2 = canonicalize_M(w2);
  for (const auto& cand : candidates(b))
    if (cand.value == target && add_M(c1, cand.canon) == c2) return cand.word;
  return std::nullopt;
}

std::optional<Refinement> refine_bounded(const MWord& w1a, const MWord& w1b, const MWord& w2a, const MWord& w2b,
                                         SearchBounds b) {
  if (!equals_M(w1a + w1b, w2a + w2b)) throw std::invalid_argument("refine_bounded: row and column sums differ");
  const auto& cs = candidates(b);
  const CanonicalM r1 = canonicalize_M(w1a), r2 = canonicalize_M(w1b);
  const CanonicalM k1 = canonicalize_M(w2a), k2 = canonicalize_M(w2b);
  const Rational v1 = state_value(w1a), v2 = state_value(w1b), u1 = state_value(w2a), u2 = state_value(w2b);
  for (const auto& z11 : cs) {
    if (z11.value > v1 || z11.value > u1) continue;
    for (const auto& z12 : cs) {
      if (z11.value + z12.value != v1 || !(add_M(z11.canon, z12.canon) == r1)) continue;
      for (const auto& z21 : cs) {
        if (z11.value + z21.value != u1 || !(add_M(z11.canon, z21.canon) == k1)) continue;
        for (const auto& z22 : cs) {
          if (z21.value + z22.value != v2 || z12.value + z22.value != u2) continue;
          if (add_M(z21.canon, z22.canon) == r2 && add_M(z12.canon, z22.canon) == k2)
            return Refinement{{{z11.word, z12.word}, {z21.word, z22.word}}};
        }
      }
    }
  }
  return std::nullopt;
}

PropertyBatteryReport property_battery_M(long size_bound, long index_bound) {
  PropertyBatteryReport rep;
  rep.size_bound = size_bound;
  rep.index_bound = index_bound;
  const auto words = enumerate_words(index_bound, size_bound);
  std::vector<CanonicalM> canon;
  canon.reserve(words.size());
  for (const auto& w : words) canon.push_back(canonicalize_M(w));
  const SearchBounds search{index_bound + 1, size_bound + 2};

  // Pedestal elements: sums of at most two a's.
  std::vector<MWord> ped;
  for (const auto& w : enumerate_words(index_bound, 2)) {
    bool only_a = std::all_of(w.terms().begin(), w.terms().end(), [](const auto& t) { return t.first.name == "a"; });
    if (only_a && !w.empty()) ped.push_back(w);
  }
  auto disjoint = [](const MWord& s, const MWord& t) {
    return std::none_of(s.terms().begin(), s.terms().end(), [&](const auto& e) { return t.count(e.first) > 0; });
  };

  // (1) cancellation
  for (const auto& s : ped) {
    const CanonicalM cs = canonicalize_M(s);
    std::map<std::string, std::size_t> first_with;
    for (std::size_t i = 0; i < words.size(); ++i) {
      ++rep.cancellation_checks;
      auto [it, fresh] = first_with.emplace(add_M(canon[i], cs).str(), i);
      if (!fresh && !(canon[it->second] == canon[i]))
        rep.counterexamples.push_back({"cancellation", words[it->second].str() + " + " + s.str() + " = " +
                                                           words[i].str() + " + " + s.str()});
    }
  }

  // (2) decomposition, with c found as the complement of t in a.
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j)
      for (const auto& s : ped)
        for (const auto& t : ped) {
          if (!disjoint(s, t)) continue;
          if (!(add_M(canon[i], canonicalize_M(s)) == add_M(canon[j], canonicalize_M(t)))) continue;
          ++rep.decomposition_checks;
          auto c = le_bounded(t, words[i], search);
          if (!c || !equals_M(*c + s, words[j]))
            rep.counterexamples.push_back({"decomposition", words[i].str() + " + " + s.str() + " = " +
                                                                words[j].str() + " + " + t.str()});
        }

  // (3) existence of d and w, v = a_1 + ... + a_L.
  for (const auto& c : words) {
    ++rep.existence_checks;
    MWord w;
    for (long i = 1; i <= index_bound; ++i) {
      long r = 0;
      while (le_bounded(MWord::a(i, r + 1), c, search)) ++r;
      w = w + MWord::a(i, r);
    }
    auto d = le_bounded(w, c, search);
    if (!d) {
      ++rep.existence_unresolved;
      continue;
    }
    for (long i = 1; i <= index_bound; ++i)
      if (le_bounded(MWord::a(i), *d, search))
        rep.counterexamples.push_back({"existence", c.str() + " = " + d->str() + " + " + w.str() +
                                                        " but a_" + std::to_string(i) + " <= d"});
  }
  return rep;
}

}  // namespace fimalg
