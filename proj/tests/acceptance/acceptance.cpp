// End-to-end acceptance run: one PASS/FAIL line per criterion. Expected
// values come from closed forms and from dense matrix computations done
// here, independently of the library's evaluators.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fimalg/closure_calculus.hpp"
#include "fimalg/expression_parser.hpp"
#include "fimalg/free_inverse_monoid.hpp"
#include "fimalg/lamplighter.hpp"
#include "fimalg/presented_monoid.hpp"
#include "fimalg/rational_series.hpp"
#include "fimalg/representation.hpp"
#include "fimalg/skew_construction.hpp"
#include "fimalg/suites.hpp"

using namespace fimalg;

namespace {

// ---------------------------------------------------------------------------
// Dense rational matrices, kept deliberately naive.

using Dense = std::vector<std::vector<Rational>>;

Dense dzero(std::size_t n) { return Dense(n, std::vector<Rational>(n)); }

Dense did(std::size_t n) {
  Dense m = dzero(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// e_i -> e_{i+1}
Dense dlower(std::size_t n) {
  Dense m = dzero(n);
  for (std::size_t i = 0; i + 1 < n; ++i) m[i + 1][i] = 1;
  return m;
}

Dense dupper(std::size_t n) {
  Dense m = dzero(n);
  for (std::size_t i = 0; i + 1 < n; ++i) m[i][i + 1] = 1;
  return m;
}

Dense operator*(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  Dense r(n, std::vector<Rational>(c));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < c; ++j)
        if (!b[t][j].is_zero()) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

Dense operator+(Dense a, const Dense& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  return a;
}

Dense operator-(Dense a, const Dense& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  return a;
}

Dense operator*(const Rational& c, Dense a) {
  for (auto& row : a)
    for (auto& v : row) v *= c;
  return a;
}

Dense dpow(const Dense& a, long e) {
  Dense r = did(a.size());
  for (long i = 0; i < e; ++i) r = r * a;
  return r;
}

// sum_k c_k x^k for a nilpotent x, coefficients indexed from 0.
Dense dseries(const std::vector<Rational>& c, const Dense& x) {
  Dense r = dzero(x.size()), p = did(x.size());
  for (std::size_t k = 0; k < c.size() && k <= x.size(); ++k) {
    r = r + c[k] * p;
    p = p * x;
  }
  return r;
}

std::size_t drank(Dense m) {
  std::size_t r = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

Dense dinverse(Dense m) {
  const std::size_t n = m.size();
  Dense inv = did(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) throw std::domain_error("singular");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Rational d = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= d;
      inv[c][j] *= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

bool same(const ExactMatrix& a, const Dense& b) { return a.to_dense() == b; }

// Coefficients of num/den by the defining recurrence.
std::vector<Rational> expand(const Polynomial& num, const Polynomial& den, std::size_t count) {
  std::vector<Rational> a(count);
  for (std::size_t n = 0; n < count; ++n) {
    Rational v = num.coeff(n);
    for (std::size_t k = 1; k <= n; ++k) v -= den.coeff(k) * a[n - k];
    a[n] = v / den.coeff(0);
  }
  return a;
}

std::vector<Rational> expand(const RationalSeries& s, std::size_t count) { return expand(s.num(), s.den(), count); }

std::vector<Rational> poly_coeffs(const Polynomial& f) { return f.coeffs(); }

// ---------------------------------------------------------------------------

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;
std::set<int> only;  // criteria named on the command line; empty runs all

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  if (!only.empty() && !only.count(id)) return;
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << "exception: " << e.what() << "; ";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    out.ok = false;
    out.detail << "over time budget " << limit_s << " s; ";
  }
  std::string d = out.detail.str();
  if (d.size() >= 2 && d.compare(d.size() - 2, 2, "; ") == 0) d.resize(d.size() - 2);
  std::printf("%s %2d %s (%s) [%.2f s]\n", out.ok ? "PASS" : "FAIL", id, title, d.c_str(), secs);
  std::fflush(stdout);
  if (!out.ok) ++failures;
}

// sum_{n <= 400} rank_at(n) 2^{-(n+2)}
Rational partial400(const std::function<long(long)>& rank_at) {
  Rational s;
  for (long n = 0; n <= 400; ++n) s += Rational(rank_at(n)) * Rational::pow2(-(n + 2));
  return s;
}

// sum_{n > 400} (n+1) 2^{-(n+2)}
Rational tail400() { return Rational(403) * Rational::pow2(-402); }

// ---------------------------------------------------------------------------

void c1(Outcome& o) {
  const long T = 64;
  auto r = vn_rank(eval(parse_expression("s + adj(s)"), T));
  for (long n = 0; n <= T; ++n) {
    std::size_t oracle = drank(dlower(n + 1) + dupper(n + 1));
    std::size_t closed = n % 2 == 1 ? n + 1 : n;
    o.require(oracle == closed && r.ranks[n] == oracle, "component rank at n = " + std::to_string(n));
  }
  // sum (n+1) 2^{-(n+2)} = 1, minus one unit on every even component: 1/3.
  const Rational expect = Rational(1) - Rational(1, 3);
  o.require(r.exact.has_value() && *r.exact == expect, "exact value");
  o.require(r.encloses(expect), "enclosure contains 2/3");
  o.detail << "exact " << (r.exact ? r.exact->str() : "none") << ", width " << r.width().str() << " ~ 2^"
           << std::log2(r.width().to_double()) << "; ";
  o.require(r.width() < Rational::pow2(-60), "enclosure width < 2^-60");
}

void c2(Outcome& o) {
  const long T = 32;
  auto rep = example_suite_s_plus_sstar(T);
  for (const auto& c : rep.checks) o.require(c.holds, c.name);
  for (const auto& c : rep.ranks) o.require(c.holds, c.name);

  const std::string alpha_s = "psi(1/(1-x^2)) * (1 - adj(s) * s) * s * s * inv(1 + s * s)";
  const std::string beta_s =
      "adj(s) * s * inv(1 + adj(s) * adj(s)) * adj(s) * (1 - adj(s) * s) * s * (1 - psi(1/(1-x^2)))";
  auto alpha_e = eval(parse_expression(alpha_s), T);
  auto beta_e = eval(parse_expression(beta_s), T);

  std::vector<std::size_t> rk_ss, rk_g;
  for (long n = 0; n <= T; ++n) {
    const std::size_t d = n + 1;
    const Dense L = dlower(d), U = dupper(d), I = did(d);
    const Rational g1 = n % 2 == 0 ? 1 : 0, g2 = 1 - g1;
    std::vector<Rational> alt(d + 1);
    for (std::size_t k = 0; k <= d; ++k) alt[k] = k % 2 == 0 ? 1 : -1;
    const Dense inv_l2 = dseries(alt, L * L), inv_u2 = dseries(alt, U * U);
    const Dense src = I - U * L;
    const Dense alpha = g1 * (src * L * L * inv_l2);
    const Dense beta = g2 * (U * L * inv_u2 * U * src * L);
    const std::string at = " at n = " + std::to_string(n);
    o.require(same(alpha_e.component(n), alpha), "alpha matches dense" + at);
    o.require(same(beta_e.component(n), beta), "beta matches dense" + at);
    o.require(alpha * alpha == dzero(d), "alpha^2 = 0" + at);
    o.require(alpha * U * (I + L * L) == g1 * (src * L), "alpha s*(1+s^2)" + at);
    o.require((L + U) * beta == g2 * (src * L), "(s+s*) beta" + at);
    rk_ss.push_back(drank(U * L));
    rk_g.push_back(drank(g2 * (src * L * U)));
    o.require(rk_ss.back() == static_cast<std::size_t>(n), "rank s*s" + at);
    o.require(rk_g.back() == (n % 2 == 1 ? 1u : 0u), "rank g2(1-s*s)ss*" + at);
  }
  // sum n 2^{-(n+2)} = 1/2; sum_{n odd} 2^{-(n+2)} = (1/8)/(1 - 1/4) = 1/6.
  auto r1 = vn_rank(eval(parse_expression("adj(s) * s"), T));
  auto r2 = vn_rank(eval(parse_expression("(1 - psi(1/(1-x^2))) * (1 - adj(s) * s) * s * adj(s)"), T));
  o.require(r1.exact && *r1.exact == Rational(1, 2), "rk(s*s) = 1/2");
  o.require(r2.exact && *r2.exact == Rational(1, 6), "rk(g2(1-s*s)ss*) = 1/6");
  o.detail << "n <= " << T << ", rk(s*s) = " << (r1.exact ? r1.exact->str() : "?")
           << ", rk(g2(1-s*s)ss*) = " << (r2.exact ? r2.exact->str() : "?") << "; ";
}

void c3(Outcome& o) {
  const long T = 64;
  std::size_t n_checked = 0;
  for (long i = 0; i <= 10; ++i)
    for (long j = 0; i + j <= 10; ++j) {
      const auto& q = q_proj(i, j);
      const Rational expect = Rational::pow2(-(i + j + 2));
      const std::string at = "q_{-" + std::to_string(i) + "," + std::to_string(j) + "}";
      o.require(trace(embed_A(q)) == expect, "trace " + at);
      auto rep = represent(q, T);
      auto r = vn_rank(rep);
      o.require(r.exact && *r.exact == expect, "vn_rank " + at);
      for (long n = 0; n <= T; ++n)
        o.require(drank(rep.component(n).to_dense()) == (n == i + j ? 1u : 0u), "component rank " + at);
      ++n_checked;
    }
  for (long n = 0; n <= 12; ++n) {
    const auto& h = h_proj(n);
    const Rational expect = Rational(n + 1) * Rational::pow2(-(n + 2));
    const std::string at = "h_" + std::to_string(n);
    o.require(trace(embed_A(h)) == expect, "trace " + at);
    auto rep = represent(h, T);
    auto r = vn_rank(rep);
    o.require(r.exact && *r.exact == expect, "vn_rank " + at);
    for (long m = 0; m <= T; ++m)
      o.require(drank(rep.component(m).to_dense()) == (m == n ? static_cast<std::size_t>(n + 1) : 0u),
                "component rank " + at);
    ++n_checked;
  }
  o.detail << n_checked << " idempotents, traces = ranks; ";
}

void c4(Outcome& o) {
  const long T = 64;
  auto rep = verify_equivalence_identities(T);
  for (const auto& c : rep.checks) o.require(c.holds, c.name);
  for (long n = 0; n <= T; ++n) {
    const std::size_t d = n + 1;
    const Dense L = dlower(d), U = dupper(d), I = did(d);
    const Dense P = I - L * U, Q = I - U * L;
    const Dense inv_1ms = dinverse(I - L), inv_1mss = dinverse(I - U);
    const std::string at = " at n = " + std::to_string(n);
    o.require(P * inv_1mss * Q * inv_1ms * P == P, "first identity" + at);
    o.require(Q * inv_1ms * P * inv_1mss * Q == Q, "mirror identity" + at);
    const Dense u = L + P * inv_1mss * Q, v = U + Q * inv_1ms * P;
    o.require(u * v == I && v * u == I, "uv = vu = 1" + at);
  }
  o.detail << "components n <= " << T << "; ";
}

const std::vector<std::pair<std::string, std::string>> kSeries = {
    {"1 + 2x - x^2", "1"}, {"1", "1 - x"}, {"1", "1 - 2x"}, {"1", "(1 + x)(1 - x)"}};

void c5(Outcome& o) {
  const long T = 32;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < kSeries.size(); ++i)
    for (std::size_t j = i; j < kSeries.size(); ++j) {
      const Polynomial an = Polynomial::parse(kSeries[i].first), ad = Polynomial::parse(kSeries[i].second);
      const Polynomial bn = Polynomial::parse(kSeries[j].first), bd = Polynomial::parse(kSeries[j].second);
      RationalSeries a(an, ad), b(bn, bd);
      const std::string tag = a.str() + " | " + b.str();
      auto rep = verify_hadamard_identity(a, b, T);
      for (const auto& c : rep.checks) o.require(c.holds, c.name + " for " + tag);
      auto ac = expand(an, ad, T + 2), bc = expand(bn, bd, T + 2), hc = expand(hadamard(a, b), T + 2);
      for (long n = 0; n <= T + 1; ++n) o.require(hc[n] == ac[n] * bc[n], "hadamard coefficient " + tag);
      for (long n = 0; n <= T; ++n) {
        const std::size_t d = n + 1;
        const Dense L = dlower(d), U = dupper(d), I = did(d);
        const Dense P = I - L * U, Q = I - U * L;
        const Dense A = dseries(ac, L), B = dseries(bc, L);
        const Dense As = dseries(ac, U), Bs = dseries(bc, U);
        const Rational c = ac[n] * bc[n];
        o.require(P * As * Q * B * P == c * P, "dense identity for " + tag);
        o.require(Q * A * P * Bs * Q == c * Q, "dense mirror for " + tag);
      }
      ++pairs;
    }
  o.detail << pairs << " pairs at T = " << T << "; ";
}

void c6(Outcome& o) {
  const long T = 32;
  const std::vector<std::string> fs = {"1+x",       "1-x",         "1+2x",       "1-x+x^2",   "1+x^2",
                                       "1-3x+2x^2", "1+x+x^2+x^3", "1-x^3",      "1+1/2x-x^2", "1+x-2x^2+x^4"};
  for (const auto& text : fs) {
    const Polynomial f = Polynomial::parse(text);
    auto rep = verify_inverse_formula(f, T);
    o.require(rep.ok, "library check for f = " + text);
    // a_0 = 1, ..., a_n: f1(x) = a_n + a_{n-1} x + ... + x^n and
    // P_i(x) = -sum_{j<=i} a_{n-j} x^{i-j}.
    const long deg = f.degree();
    const auto a = poly_coeffs(f);
    std::vector<Rational> f1(deg + 1);
    for (long k = 0; k <= deg; ++k) f1[k] = a[deg - k];
    for (long m = deg; m <= T; ++m) {
      const std::size_t d = m + 1;
      const Dense L = dlower(d), U = dupper(d), I = did(d);
      const Dense fstar_inv = dinverse(dseries(a, U));
      const Dense f1_inv = dinverse(dseries(f1, L));
      Dense rhs = f1_inv * dpow(L, deg);
      Dense poly_rhs = dpow(L, deg) * dseries(a, U);
      for (long i = 0; i < deg; ++i) {
        std::vector<Rational> p(i + 1);
        for (long j = 0; j <= i; ++j) p[i - j] = -a[deg - j];
        const Dense term = dpow(L, i) * (I - L * U) * dseries(p, U);
        rhs = rhs - f1_inv * term * fstar_inv;
        poly_rhs = poly_rhs - term;
      }
      const std::string at = text + " at m = " + std::to_string(m);
      o.require(fstar_inv == rhs, "inverse congruence for " + at);
      o.require(dseries(f1, L) == poly_rhs, "polynomial form for " + at);
    }
  }
  o.detail << fs.size() << " polynomials, components deg f <= m <= " << T << "; ";
}

void c7(Outcome& o) {
  auto r = monoid_oracle_agreement(6, 4, 12, 6);
  o.require(r.disagreements == 0, r.examples.empty() ? "disagreement" : r.examples.front());
  // Re-check pairs directly against oracle_equiv on a sample of the words.
  const auto words = enumerate_words(4, 6);
  const auto pres = m_presentation(6);
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::size_t resolved = 0;
  for (int k = 0; k < 60; ++k) {
    const MWord& w1 = words[pick(rng)];
    // A partner with the same canonical form where one exists nearby.
    const MWord w2 = canonicalize_M(w1).word();
    if (w2.size() > 12 || w2.max_index() > 6) continue;
    if (oracle_equiv(pres, w1, w2, 12, 6) == OracleResult::Equal) {
      ++resolved;
      o.require(equals_M(w1, w2), "equals_M on " + w1.str() + " ~ " + w2.str());
    }
  }
  o.detail << r.words << " words, " << r.components << " oracle components, " << r.disagreements
           << " disagreements, " << r.unresolved_pairs << " pairs unresolved by the oracle, " << resolved
           << " direct pair checks; ";
}

MunnTriple walk(const std::string& w) {
  long pos = 0, lo = 0, hi = 0;
  for (char c : w) {
    pos += c == 's' ? 1 : -1;
    lo = std::min(lo, pos);
    hi = std::max(hi, pos);
  }
  return {lo, hi, pos};
}

void c8(Outcome& o) {
  std::vector<std::string> words = {""};
  for (std::size_t at = 0; at < words.size(); ++at)
    if (words[at].size() < 10)
      for (char c : {'s', 'S'}) words.push_back(words[at] + c);
  for (const auto& w : words) {
    MunnTriple prod;
    for (char c : w) prod = prod * (c == 's' ? MunnTriple::s() : MunnTriple::s_star());
    o.require(prod == walk(w) && word_oracle(w) == prod, "word " + w);
  }
  auto part = rewriting_oracle(8, 4);
  std::map<std::size_t, MunnTriple> by_class;
  std::map<MunnTriple, std::size_t> by_triple;
  for (std::size_t i = 0; i < part.words.size(); ++i) {
    const MunnTriple t = walk(part.words[i]);
    auto [a, fresh_a] = by_class.emplace(part.class_of[i], t);
    auto [b, fresh_b] = by_triple.emplace(t, part.class_of[i]);
    o.require(a->second == t && b->second == part.class_of[i], "partition at " + part.words[i]);
  }
  o.require(part.class_count == by_triple.size(), "class count");
  o.detail << words.size() << " words of length <= 10, " << part.words.size() << " words / " << part.class_count
           << " classes of length <= 8; ";
}

void c9(Outcome& o) {
  const long T = 16;
  std::vector<std::vector<Rational>> rows;
  for (long l = 0; l <= 6; ++l)
    for (long k = 0; k <= l; ++k)
      for (long m = 0; m <= l; ++m) {
        auto rep = represent(AlgebraElem::monomial(k, l, m), T);
        std::vector<Rational> flat;
        for (long n = 0; n <= T; ++n) {
          const std::size_t d = n + 1;
          const Dense img = dpow(dlower(d), k) * dpow(dupper(d), l) * dpow(dlower(d), m);
          o.require(same(rep.component(n), img), "image of s^k s*^l s^m");
          for (const auto& row : img) flat.insert(flat.end(), row.begin(), row.end());
        }
        rows.push_back(std::move(flat));
      }
  const std::size_t r = drank(rows);
  o.require(rows.size() == 140 && r == rows.size(), "rank of the stacked images");
  o.detail << rows.size() << " monomials, rank " << r << " at T = " << T << "; ";
}

// Least-choice M(k) >= 2(k+1) N(k), strictly increasing, and the matrices
// of the construction, rebuilt from the definitions.
struct Skew {
  std::vector<Polynomial> F;  // F_0 .. F_K
  std::vector<long> M;        // M(0) = 1, M(1), ...
  explicit Skew(const std::vector<Polynomial>& fs) {
    F.push_back(Polynomial(1));
    M.push_back(1);
    for (long k = 1; k <= 200; ++k) {
      Polynomial f = k <= static_cast<long>(fs.size()) ? fs[k - 1] : Polynomial(1);
      F.push_back(F.back() * f);
      M.push_back(std::max(M.back() + 1, 2 * (k + 1) * F.back().degree()));
    }
  }
  long regime(long n) const {
    long k = 0;
    while (k + 1 < static_cast<long>(M.size()) && M[k + 1] <= n) ++k;
    return k;
  }
  std::pair<Dense, Dense> pair(long n) const {
    const std::size_t d = n;
    Dense w = dlower(d), ws = dupper(d);
    if (n == 1) return {w, ws};
    const long k = regime(n);
    if (k >= 1)
      for (long j = 1; j <= F[k].degree(); ++j) {
        ws[j - 1][0] -= F[k].coeff(j);
        ws[n - 1][n - j] -= F[k].coeff(j);
      }
    return {w, ws};
  }
};

void c10(Outcome& o) {
  const std::vector<std::vector<Polynomial>> scheds = {
      {Polynomial::parse("1+x")}, {Polynomial::parse("1+x"), Polynomial::parse("1-x+x^2")}};
  std::size_t checks = 0;
  long worst = 0;
  for (const auto& fs : scheds) {
    SigmaSchedule sched(fs);
    const Skew skew(fs);
    for (long k = 1; k <= 6; ++k) o.require(sched.M(k) == skew.M[k], "M(k)");
    auto rep = verify_wn_lemma(sched, "abcdef", 5, 1, 200);
    auto take = [&](const StabilityCheck& c) {
      ++checks;
      worst = std::max(worst, c.stabilizes_from);
      o.require(c.stabilizes_from >= 0 && c.threshold_sufficient, sched.str() + " " + c.name);
    };
    for (const auto& c : rep.checks) take(c);
    for (long i = 1; i <= 4; ++i)
      for (long j = 1; j <= 4; ++j) take(verify_stabilization(sched, i, j, 1, 200));
    // Rebuilt matrices agree, and spot identities hold on them.
    for (long n : {1L, 2L, 3L, 7L, 18L, 19L, 41L, 97L, 200L}) {
      auto p = build_pair(n, sched);
      auto [w, ws] = skew.pair(n);
      o.require(same(p.w, w) && same(p.wstar, ws), "w_n, w_n* at n = " + std::to_string(n));
      o.require(w * ws * w == w && ws * w * ws == ws, "w w* w = w at n = " + std::to_string(n));
      if (n >= 2) {
        const Dense I = did(n);
        o.require((I - w * ws) * (I - ws * w) == dzero(n), "orthogonality at n = " + std::to_string(n));
        o.require(drank(I - w * ws) == 1 && drank(I - ws * w) == 1, "rank one at n = " + std::to_string(n));
      }
    }
  }
  o.detail << checks << " identity families over n <= 200, latest stabilization n = " << worst << "; ";
}

void c11(Outcome& o) {
  const long T = 64;
  SigmaSchedule sched({Polynomial::parse("1+x")});
  auto rep = tau_rank_identities(sched, 4, T);
  for (const auto& c : rep.checks) o.require(c.holds, c.name + " " + c.detail);
  o.require(rep.K.size() == 4, "K_1..K_4 found");
  const Skew skew({Polynomial::parse("1+x")});
  for (std::size_t m = 1; m <= rep.K.size(); ++m)
    for (long t = rep.K[m - 1] + 1; t <= T; ++t) {
      auto [w, ws] = skew.pair(t);
      const Dense e = did(t) - dpow(w, m + 1) * dpow(ws, m + 1);
      o.require(drank(e) == m + 1, "rank(1 - w^{n+1} w*^{n+1}) at n = " + std::to_string(m) + ", t = " +
                                       std::to_string(t));
    }
  o.detail << "K =";
  for (long k : rep.K) o.detail << " " << k;
  o.detail << ", " << rep.checks.size() << " rank identities; ";
}

void c12(Outcome& o) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-3, 3), order(1, 4);
  auto random_series = [&] {
    const int L = order(rng);
    std::vector<Rational> den(L + 1), num(L);
    den[0] = 1;
    for (int k = 1; k <= L; ++k) den[k] = coef(rng);
    if (den[L].is_zero()) den[L] = 1;
    for (int k = 0; k < L; ++k) num[k] = coef(rng);
    if (num[0].is_zero()) num[0] = 1;
    return RationalSeries(Polynomial(num), Polynomial(den));
  };
  for (int k = 0; k < 20; ++k) {
    auto a = random_series(), b = random_series();
    auto h = hadamard(a, b);
    auto ac = expand(a, 100), bc = expand(b, 100), hc = expand(h, 100);
    for (std::size_t n = 0; n < 100; ++n) o.require(hc[n] == ac[n] * bc[n], "hadamard of " + a.str() + ", " + b.str());
  }

  auto z = zero_set(RationalSeries::parse("1/(1-x^2)"));
  for (std::size_t n = 0; n < 400; ++n) o.require(z.set.contains(n) == (n % 2 == 1), "zero set membership");
  o.require(z.fully_certified(), "zero set certificate");
  for (const auto& c : z.classes) o.require(c.certified, "class certificate");

  const std::vector<std::string> samples = {"1/(1-x^2)",       "x/(1-x^3)",   "1 - x",       "(1-x)/(1-2x)",
                                            "x/((1-x)(1+x))", "x^2/(1+x)", "1/(1+x^2)", "2 + x^4",
                                            "(1-x^2)/(1-2x+x^2)",  "1/(1-x)"};
  for (const auto& text : samples) {
    const auto a = RationalSeries::parse(text);
    const QFraction p = QFraction::from_series(a);
    const QFraction q = q_quasi_inverse(p);
    o.require(q_equal(p * q * p, p), "pqp = p for " + text);
    o.require(q_equal(q * p * q, q), "qpq = q for " + text);
    const auto ac = expand(a, 120);
    for (std::size_t n = 0; n < 120; ++n)
      o.require(q.coeff(n) == (ac[n].is_zero() ? Rational(0) : ac[n].inverse()), "coefficient of q for " + text);
  }
  o.detail << "20 Hadamard pairs x 100 terms, zero set " << z.set.str() << ", " << samples.size()
           << " quasi-inverses; ";
}

void c13(Outcome& o) {
  const long T = 64;
  struct Item {
    std::string name;
    AlgebraElem e;
    Rational expect;
  };
  const auto s = AlgebraElem::s(), st = AlgebraElem::s_star(), one = AlgebraElem::one();
  std::vector<Item> items;
  for (long i = 0; i <= 5; ++i)
    for (long j = 0; i + j <= 5; ++j)
      items.push_back({"q_{-" + std::to_string(i) + "," + std::to_string(j) + "}", q_proj(i, j),
                       Rational::pow2(-(i + j + 2))});
  for (long n = 0; n <= 6; ++n)
    items.push_back({"h_" + std::to_string(n), h_proj(n), Rational(n + 1) * Rational::pow2(-(n + 2))});
  items.push_back({"ss*", s * st, Rational(1, 2)});
  items.push_back({"s*s", st * s, Rational(1, 2)});
  for (long i = 1; i <= 6; ++i) items.push_back({"s^i s*^i", pow(s, i) * pow(st, i), Rational::pow2(-i)});
  // Images of the generators x_n, y_n, z_n, a_{n+1}; each rank is half the
  // state value 2^{-index} of the generator.
  for (long n = 0; n <= 5; ++n) {
    const auto sn = pow(s, n), stn = pow(st, n);
    items.push_back({"tau(x_" + std::to_string(n) + ")", pow(s, n + 1) * pow(st, n + 1), state_value(MWord::x(n)) / 2});
    items.push_back({"tau(y_" + std::to_string(n) + ")", sn * (one - s * st) * stn, state_value(MWord::y(n)) / 2});
    items.push_back({"tau(z_" + std::to_string(n) + ")", stn * (one - st * s) * sn, state_value(MWord::z(n)) / 2});
    items.push_back({"tau(a_" + std::to_string(n + 1) + ")", q_proj(0, n), state_value(MWord::a(n + 1)) / 2});
  }
  for (const auto& it : items) {
    o.require(it.e * it.e == it.e, it.name + " idempotent");
    auto r = vn_rank(represent(it.e, T));
    o.require(r.exact.has_value() && r.exact->is_dyadic() && *r.exact == it.expect, "rank of " + it.name);
  }
  // The closed forms used for the generator images.
  o.require(state_value(MWord::x(3)) == Rational(1, 8) && state_value(MWord::a(2)) == Rational(1, 4), "state values");

  // Central projections from psi of 0/1 series times projections of A.
  struct Proj {
    std::string expr;
    std::function<long(long)> rank;
  };
  const std::vector<Proj> projs = {
      {"1 - adj(s) * s", [](long) { return 1L; }},
      {"1 - s * adj(s)", [](long) { return 1L; }},
      {"s * adj(s)", [](long n) { return n; }},
      {"s * s * adj(s) * adj(s)", [](long n) { return std::max(n - 1, 0L); }},
      {"s * (1 - s * adj(s)) * adj(s)", [](long n) { return n >= 1 ? 1L : 0L; }},
  };
  const std::vector<std::string> supports = {"x/(1-x^2)", "1/(1-x^3)", "(x + x^2 - x^3)/(1-x^2)",
                                             "(x^2 + x^3)/(1-x^5)"};
  std::size_t sampled = 0, non_dyadic = 0;
  for (const auto& sup : supports) {
    const auto series = support_idempotent(RationalSeries::parse(sup));
    const auto sc = expand(series, 402);
    for (std::size_t n = 0; n < sc.size(); ++n) o.require(sc[n].is_zero() || sc[n].is_one(), "0/1 support series");
    for (const auto& p : projs) {
      const std::string text = "psi(" + sup + ") * (" + p.expr + ")";
      // psi of the zero set of `sup`: value 1 exactly where sup vanishes.
      const auto e = ClosureExpr::psi(series) * parse_expression(p.expr);
      auto img = eval(e, T);
      o.require(eval(e * e, T) == img, text + " idempotent");
      for (long n = 0; n <= T; ++n) {
        const std::size_t want = sc[n].is_one() ? static_cast<std::size_t>(p.rank(n)) : 0u;
        o.require(drank(img.component(n).to_dense()) == want, text + " component rank");
      }
      auto r = vn_rank(img);
      const Rational lo = partial400([&](long n) { return sc[n].is_one() ? p.rank(n) : 0L; });
      o.require(r.exact.has_value() && lo <= *r.exact && *r.exact <= lo + tail400(), "exact rank of " + text);
      if (r.exact && !r.exact->is_dyadic()) ++non_dyadic;
      ++sampled;
    }
  }
  o.detail << items.size() << " catalog idempotents with dyadic ranks, " << sampled << " psi-projections ("
           << non_dyadic << " with non-dyadic rational rank); ";
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  criterion(1, "headline rank rk(s+s*) = 2/3 at T = 64", 10, c1);
  criterion(2, "example decomposition of s+s*", 30, c2);
  criterion(3, "trace table of q and h against vn_rank", 30, c3);
  criterion(4, "equivalence identities and the unit u", 10, c4);
  criterion(5, "Hadamard identity and its mirror", 60, c5);
  criterion(6, "adjoint-inverse congruence", 60, c6);
  criterion(7, "monoid canonical forms against the bounded oracle", 600, c7);
  criterion(8, "free inverse monoid evaluation and partition", 60, c8);
  criterion(9, "faithfulness probe", 60, c9);
  criterion(10, "skew construction identities and thresholds", 300, c10);
  criterion(11, "rank identities for the generator images", 120, c11);
  criterion(12, "rational series", 60, c12);
  criterion(13, "idempotent rank image", 60, c13);
  std::printf("%d of %zu criteria failed\n", failures, only.empty() ? std::size_t{13} : only.size());
  return failures == 0 ? 0 : 1;
}
