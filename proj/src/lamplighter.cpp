#include "fimalg/lamplighter.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "fimalg/representation.hpp"

namespace fimalg {

using nlohmann::json;

LampElem LampElem::make(std::vector<long> lamps, long shift) {
  std::sort(lamps.begin(), lamps.end());
  if (std::adjacent_find(lamps.begin(), lamps.end()) != lamps.end())
    throw std::invalid_argument("lamp positions must be distinct");
  return {std::move(lamps), shift};
}

namespace {

std::vector<long> sym_diff(const std::vector<long>& x, const std::vector<long>& y) {
  std::vector<long> out;
  std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

struct LampLexer {
  std::string_view s;
  std::size_t pos = 0;
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("group element: " + what + " at position " + std::to_string(pos));
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected an integer");
    long v = std::stol(std::string(s.substr(start, pos - start)));
    return neg ? -v : v;
  }
};

}  // namespace

LampElem LampElem::parse(std::string_view text) {
  if (text.find_first_not_of(" \t\n") == std::string_view::npos) throw std::invalid_argument("empty group element");
  LampLexer lx{text};
  LampElem g;
  lx.skip();
  if (lx.pos < text.size() && text[lx.pos] == '1') {
    ++lx.pos;
    lx.skip();
    if (lx.pos != text.size()) lx.fail("unexpected input after 1");
    return g;
  }
  while (true) {
    lx.skip();
    if (lx.pos >= text.size()) break;
    char c = text[lx.pos++];
    if (c == 'a') {
      if (!lx.eat('(')) lx.fail("expected (");
      long i = lx.integer();
      if (!lx.eat(')')) lx.fail("expected )");
      g = group_mul(g, LampElem::a(i));
    } else if (c == 't') {
      long k = 1;
      if (lx.eat('^')) {
        if (lx.eat('(')) {
          k = lx.integer();
          if (!lx.eat(')')) lx.fail("expected )");
        } else {
          k = lx.integer();
        }
      }
      g = group_mul(g, LampElem::t(k));
    } else {
      --lx.pos;
      lx.fail("unexpected character");
    }
  }
  return g;
}

std::string LampElem::str() const {
  if (is_identity()) return "1";
  std::string out;
  for (long i : lamps) out += (out.empty() ? "" : " ") + std::string("a(") + std::to_string(i) + ")";
  if (shift != 0) out += (out.empty() ? "" : " ") + std::string(shift == 1 ? "t" : "t^" + std::to_string(shift));
  return out;
}

LampElem LampElem::from_json(std::string_view text) {
  try {
    json j = json::parse(text);
    return make(j.at("lamps").get<std::vector<long>>(), j.value("shift", 0L));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("group element JSON: ") + e.what());
  }
}

std::string LampElem::to_json() const { return json{{"lamps", lamps}, {"shift", shift}}.dump(); }

LampElem LampElem::inverse() const {
  // (A t^m)^{-1} = t^{-m} A = (A + m) t^{-m}
  std::vector<long> l;
  for (long i : lamps) l.push_back(i + shift);
  return {std::move(l), -shift};
}

LampElem group_mul(const LampElem& g, const LampElem& h) {
  // t^m a_j = a_{j-m} t^m
  std::vector<long> moved;
  moved.reserve(h.lamps.size());
  for (long j : h.lamps) moved.push_back(j - g.shift);
  return {sym_diff(g.lamps, moved), g.shift + h.shift};
}

GroupAlgElem::GroupAlgElem(Rational c) {
  if (!c.is_zero()) terms_.emplace(LampElem::identity(), std::move(c));
}

GroupAlgElem::GroupAlgElem(const LampElem& g, Rational c) {
  if (!c.is_zero()) terms_.emplace(g, std::move(c));
}

GroupAlgElem GroupAlgElem::e(long i) {
  return GroupAlgElem(Rational(1, 2)) + GroupAlgElem(LampElem::a(i), Rational(1, 2));
}

GroupAlgElem GroupAlgElem::f(long i) {
  return GroupAlgElem(Rational(1, 2)) - GroupAlgElem(LampElem::a(i), Rational(1, 2));
}

Rational GroupAlgElem::coeff(const LampElem& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GroupAlgElem::add_term(const LampElem& g, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(g, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

GroupAlgElem& GroupAlgElem::operator+=(const GroupAlgElem& o) {
  for (const auto& [g, c] : o.terms_) add_term(g, c);
  return *this;
}

GroupAlgElem& GroupAlgElem::operator-=(const GroupAlgElem& o) {
  for (const auto& [g, c] : o.terms_) add_term(g, -c);
  return *this;
}

GroupAlgElem operator*(const Rational& c, const GroupAlgElem& a) {
  GroupAlgElem out;
  for (const auto& [g, v] : a.terms_) out.add_term(g, c * v);
  return out;
}

std::string GroupAlgElem::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : terms_) {
    std::string coef = c.str();
    bool neg = c.sign() < 0;
    if (neg) coef = coef.substr(1);
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (g.is_identity())
      out += coef;
    else
      out += (coef == "1" ? "" : coef + " ") + g.str();
  }
  return out;
}

namespace {

// Products inside the commutative subalgebra of the lamps, on a window of
// width <= 20, go through the Walsh-Hadamard transform.
constexpr long kWindow = 20;

bool lamp_window(const GroupAlgElem& x, const GroupAlgElem& y, long& lo, long& hi) {
  lo = 0;
  hi = -1;
  bool any = false;
  for (const auto* e : {&x, &y})
    for (const auto& [g, c] : e->terms()) {
      if (g.shift != 0) return false;
      for (long i : g.lamps) {
        lo = any ? std::min(lo, i) : i;
        hi = any ? std::max(hi, i) : i;
        any = true;
      }
    }
  return hi - lo + 1 <= kWindow;
}

void fwht(std::vector<Rational>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1)
    for (std::size_t i = 0; i < v.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        Rational a = v[j];
        v[j] += v[j + h];
        v[j + h] = a - v[j + h];
      }
}

GroupAlgElem mul_lamps(const GroupAlgElem& x, const GroupAlgElem& y, long lo, long hi) {
  const long w = std::max(0L, hi - lo + 1);
  const std::size_t size = std::size_t{1} << w;
  auto dense = [&](const GroupAlgElem& e) {
    std::vector<Rational> v(size);
    for (const auto& [g, c] : e.terms()) {
      std::size_t mask = 0;
      for (long i : g.lamps) mask |= std::size_t{1} << (i - lo);
      v[mask] = c;
    }
    return v;
  };
  auto a = dense(x), b = dense(y);
  fwht(a);
  fwht(b);
  for (std::size_t i = 0; i < size; ++i) a[i] *= b[i];
  fwht(a);
  const Rational scale = Rational(1) / Rational(static_cast<long>(size));
  GroupAlgElem out;
  for (std::size_t m = 0; m < size; ++m) {
    if (a[m].is_zero()) continue;
    LampElem g;
    for (long i = 0; i < w; ++i)
      if (m & (std::size_t{1} << i)) g.lamps.push_back(lo + i);
    out += GroupAlgElem(g, a[m] * scale);
  }
  return out;
}

}  // namespace

GroupAlgElem alg_mul(const GroupAlgElem& x, const GroupAlgElem& y) {
  long lo = 0, hi = 0;
  if (x.terms().size() * y.terms().size() > 64 && lamp_window(x, y, lo, hi)) return mul_lamps(x, y, lo, hi);
  GroupAlgElem out;
  for (const auto& [g, c] : x.terms())
    for (const auto& [h, d] : y.terms()) out += GroupAlgElem(group_mul(g, h), c * d);
  return out;
}

GroupAlgElem alg_star(const GroupAlgElem& x) {
  GroupAlgElem out;
  for (const auto& [g, c] : x.terms()) out += GroupAlgElem(g.inverse(), c);
  return out;
}

GroupAlgElem embed_A(const MunnTriple& m) {
  // The walk over [lo, hi] ending at end maps to e_{-hi+1} ... e_{-lo} t^end.
  GroupAlgElem out(LampElem::t(m.end));
  for (long i = -m.hi + 1; i <= -m.lo; ++i) out = GroupAlgElem::e(i) * out;
  return out;
}

GroupAlgElem embed_A(const AlgebraElem& a) {
  GroupAlgElem out;
  for (const auto& [m, c] : a.terms()) out += c * embed_A(m);
  return out;
}

Rational trace(const GroupAlgElem& x) { return x.coeff(LampElem::identity()); }

bool EmbeddingReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

EmbeddingReport verify_embedding_suite(long bound, long T) {
  if (bound < 0) throw std::invalid_argument("bound must be >= 0");
  EmbeddingReport rep;
  rep.bound = bound;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto rank_of = [&](const AlgebraElem& p) { return vn_rank(represent(p, T)).exact; };
  auto compare = [&](const std::string& what, const AlgebraElem& p, const Rational& tr) {
    auto r = rank_of(p);
    add("trace = vn_rank for " + what, r && *r == tr,
        "trace " + tr.str() + ", vn_rank " + (r ? r->str() : std::string("inexact")));
  };

  for (long i = 0; i <= bound; ++i)
    for (long j = 0; i + j <= bound; ++j) {
      const std::string q = "q_{-" + std::to_string(i) + "," + std::to_string(j) + "}";
      GroupAlgElem phi = embed_A(q_proj(i, j));
      GroupAlgElem expect = GroupAlgElem::f(-i);
      for (long k = -i + 1; k <= j; ++k) expect = expect * GroupAlgElem::e(k);
      expect = expect * GroupAlgElem::f(j + 1);
      add("phi(" + q + ") = f_{-i} e_{-i+1} ... e_j f_{j+1}", phi == expect);
      add("phi(" + q + ") idempotent", phi * phi == phi);
      Rational tr = trace(phi);
      add("trace phi(" + q + ") = 2^-(i+j+2)", tr == Rational::pow2(-(i + j + 2)), tr.str());
      compare(q, q_proj(i, j), tr);
    }

  Rational partial(0);
  for (long n = 0; n <= bound; ++n) {
    const std::string h = "h_" + std::to_string(n);
    Rational tr = trace(embed_A(h_proj(n)));
    add("trace phi(" + h + ") = (n+1) 2^-(n+2)", tr == Rational(n + 1) * Rational::pow2(-(n + 2)), tr.str());
    compare(h, h_proj(n), tr);
    partial += tr;
    add("sum_{m<=n} trace phi(h_m) = 1 - (n+3)/2^(n+2), n = " + std::to_string(n),
        partial == Rational(1) - Rational(n + 3) * Rational::pow2(-(n + 2)), partial.str());
  }

  const AlgebraElem s = AlgebraElem::s(), ss = AlgebraElem::s_star();
  add("phi(s s*) = e_0", embed_A(s * ss) == GroupAlgElem::e(0));
  add("phi(s* s) = e_1", embed_A(ss * s) == GroupAlgElem::e(1));
  compare("s s*", s * ss, trace(embed_A(s * ss)));
  compare("s* s", ss * s, trace(embed_A(ss * s)));
  for (long i = 1; i <= bound; ++i) {
    const std::string name = "s^" + std::to_string(i) + " s*^" + std::to_string(i);
    GroupAlgElem phi_s = GroupAlgElem::e(0) * GroupAlgElem::t(1), acc(1), acc_star(1);
    for (long k = 0; k < i; ++k) {
      acc = acc * phi_s;
      acc_star = acc_star * alg_star(phi_s);
    }
    GroupAlgElem expect(1);
    for (long k = -i + 1; k <= 0; ++k) expect = expect * GroupAlgElem::e(k);
    const AlgebraElem p = AlgebraElem::monomial(i, i, 0);
    add("phi(" + name + ") = e_{-i+1} ... e_0", embed_A(p) == expect && acc * acc_star == expect);
    compare(name, p, trace(expect));
  }
  return rep;
}

}  // namespace fimalg
