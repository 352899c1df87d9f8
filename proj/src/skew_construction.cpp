#include "fimalg/skew_construction.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <stdexcept>

namespace fimalg {

using nlohmann::json;

SigmaSchedule::SigmaSchedule(std::vector<Polynomial> fs, bool pad) : fs_(std::move(fs)), pad_(pad) {
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (!fs_[i].coeff(0).is_one())
      throw std::invalid_argument("schedule entry f_" + std::to_string(i + 1) + " = " + fs_[i].str() +
                                  " does not have constant term 1");
}

SigmaSchedule SigmaSchedule::from_json(std::string_view text, bool pad) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("schedule JSON: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("schedule JSON must be a list of coefficient arrays");
  std::vector<Polynomial> fs;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("schedule entry must be a coefficient array");
    std::vector<Rational> c;
    for (const auto& v : row) {
      if (v.is_number_integer())
        c.emplace_back(v.get<long>());
      else if (v.is_string())
        c.push_back(Rational::parse(v.get<std::string>()));
      else
        throw std::invalid_argument("schedule coefficient must be an integer or a \"p/q\" string");
    }
    fs.emplace_back(std::move(c));
  }
  return SigmaSchedule(std::move(fs), pad);
}

Polynomial SigmaSchedule::F(long k) const {
  if (k < 0) throw std::out_of_range("F(k) needs k >= 0");
  if (!pad_ && k > static_cast<long>(fs_.size()))
    throw std::out_of_range("schedule has only " + std::to_string(fs_.size()) + " polynomials");
  Polynomial p(1);
  for (long i = 0; i < std::min<long>(k, static_cast<long>(fs_.size())); ++i) p = p * fs_[static_cast<std::size_t>(i)];
  return p;
}

long SigmaSchedule::M(long k) const {
  long m = 1;
  for (long i = 1; i <= k; ++i) m = std::max(m + 1, 2 * (i + 1) * N(i));
  return m;
}

long SigmaSchedule::regime(long n) const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  long k = 0;
  long next = M(1);
  while (next <= n) {
    ++k;
    if (!pad_ && k >= static_cast<long>(fs_.size()))
      throw std::out_of_range("n = " + std::to_string(n) + " is beyond the coverage of the schedule (M(" +
                              std::to_string(k) + ") = " + std::to_string(next) + ")");
    next = std::max(next + 1, 2 * (k + 2) * N(k + 1));
  }
  return k;
}

long SigmaSchedule::least_k(long bound, const Polynomial& g, long k_min) const {
  const long last = std::max<long>(k_min, static_cast<long>(fs_.size()));
  for (long k = std::max<long>(k_min, 1);; ++k) {
    bool divides = Polynomial::divmod(F(k), g).second.is_zero();
    if (M(k) > bound && divides) return k;
    // Past the prefix F(k) is constant, so divisibility can no longer change.
    if (k >= last && !divides) return -1;
    if (!pad_ && k >= static_cast<long>(fs_.size())) return -1;
  }
}

std::string SigmaSchedule::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < fs_.size(); ++i) out += (i ? ", " : "") + fs_[i].str();
  return out + "]";
}

SkewPair build_pair(long n, const SigmaSchedule& sched) {
  if (n < 1) throw std::invalid_argument("build_pair needs n >= 1");
  SkewPair p;
  p.n = n;
  p.regime = sched.regime(n);
  const auto size = static_cast<std::size_t>(n);
  p.w = lower_shift(size);
  p.wstar = upper_shift(size);
  if (p.regime >= 1) {
    Polynomial f = sched.F(p.regime);
    for (long j = 1; j <= f.degree(); ++j) {
      Rational a = f.coeff(static_cast<std::size_t>(j));
      p.wstar.add_to(static_cast<std::size_t>(j - 1), 0, -a);
      p.wstar.add_to(size - 1, static_cast<std::size_t>(n - j), -a);
    }
  }
  const ExactMatrix one = ExactMatrix::identity(size);
  p.one_minus_wws = one - p.w * p.wstar;
  p.one_minus_wsw = one - p.wstar * p.w;
  return p;
}

namespace {

struct Powers {
  std::vector<ExactMatrix> w, ws;  // w^0..w^e, w*^0..w*^e
  Powers(const SkewPair& p, long e) {
    const auto size = static_cast<std::size_t>(p.n);
    w.push_back(ExactMatrix::identity(size));
    ws.push_back(ExactMatrix::identity(size));
    for (long i = 1; i <= e; ++i) {
      w.push_back(w.back() * p.w);
      ws.push_back(ws.back() * p.wstar);
    }
  }
};

StabilityCheck summarize(std::string name, long lo, long hi, long threshold, const std::vector<char>& holds) {
  StabilityCheck c;
  c.name = std::move(name);
  c.n_lo = lo;
  c.n_hi = hi;
  c.proof_threshold = threshold;
  for (long n = lo; n <= hi; ++n)
    if (!holds[static_cast<std::size_t>(n - lo)]) c.failures.push_back(n);
  if (c.failures.empty())
    c.stabilizes_from = lo;
  else if (c.failures.back() < hi)
    c.stabilizes_from = c.failures.back() + 1;
  c.threshold_sufficient = threshold >= 0 && (c.failures.empty() || c.failures.back() < threshold);
  return c;
}

// Tracks per-n outcomes of named identities in insertion order.
class Ledger {
 public:
  Ledger(long lo, long hi) : lo_(lo), hi_(hi) {}
  void record(const std::string& name, long threshold, long n, bool ok) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, entries_.size()).first;
      entries_.push_back({name, threshold, std::vector<char>(static_cast<std::size_t>(hi_ - lo_ + 1), 1)});
    }
    if (!ok) entries_[it->second].holds[static_cast<std::size_t>(n - lo_)] = 0;
  }
  [[nodiscard]] std::vector<StabilityCheck> checks() const {
    std::vector<StabilityCheck> out;
    for (const auto& e : entries_) out.push_back(summarize(e.name, lo_, hi_, e.threshold, e.holds));
    return out;
  }

 private:
  struct Entry {
    std::string name;
    long threshold;
    std::vector<char> holds;
  };
  long lo_, hi_;
  std::map<std::string, std::size_t> index_;
  std::vector<Entry> entries_;
};

std::string ix(long a, long b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

bool WnLemmaReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.threshold_sufficient; });
}

WnLemmaReport verify_wn_lemma(const SigmaSchedule& sched, const std::string& parts, long exponent_bound, long n_lo,
                              long n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("bad n range");
  auto want = [&](char c) { return parts.find(c) != std::string::npos; };
  // M(k0) for the least k0 with M(k0) > 2 e, or 1 when e = 0.
  auto thr = [&](long e) { return e == 0 ? 1L : sched.M(sched.least_k(2 * e)); };
  Ledger led(n_lo, n_hi);
  for (long n = n_lo; n <= n_hi; ++n) {
    SkewPair p = build_pair(n, sched);
    Powers pw(p, exponent_bound);
    const ExactMatrix& P = p.one_minus_wws;
    const ExactMatrix& Q = p.one_minus_wsw;
    const auto size = static_cast<std::size_t>(n);
    const ExactMatrix zero(size, size);
    if (want('a')) {
      led.record("a: w w* w = w", 1, n, p.w * p.wstar * p.w == p.w);
      led.record("a: w* w w* = w*", 1, n, p.wstar * p.w * p.wstar == p.wstar);
    }
    if (want('b')) {
      led.record("b: 1-ww* rank one idempotent", 1, n, P * P == P && rank(P) == 1);
      led.record("b: 1-w*w rank one idempotent", 1, n, Q * Q == Q && rank(Q) == 1);
      if (n >= 2) led.record("b: orthogonal", 2, n, P * Q == zero && Q * P == zero);
    }
    for (long i = 0; i <= exponent_bound; ++i) {
      for (long l = 0; l <= exponent_bound; ++l) {
        const ExactMatrix left = pw.ws[static_cast<std::size_t>(l)] * pw.w[static_cast<std::size_t>(i)] * P;
        if (l <= i && want('c'))
          led.record("c: w*^l w^i (1-ww*) = w^(i-l)(1-ww*) " + ix(l, i), l == 0 ? 1 : thr(i), n,
                     left == pw.w[static_cast<std::size_t>(i - l)] * P);
        if (l > i && want('d')) led.record("d: w*^l w^i (1-ww*) = 0 " + ix(l, i), thr(i), n, left == zero);
      }
    }
    for (long j = 0; j <= exponent_bound; ++j) {
      for (long l = 0; l <= exponent_bound; ++l) {
        const ExactMatrix right = P * pw.ws[static_cast<std::size_t>(j)] * pw.w[static_cast<std::size_t>(l)];
        if (l <= j && want('e'))
          led.record("e: (1-ww*) w*^j w^l = (1-ww*) w*^(j-l) " + ix(j, l), l == 0 ? 1 : thr(j), n,
                     right == P * pw.ws[static_cast<std::size_t>(j - l)]);
        if (l > j && want('f')) led.record("f: (1-ww*) w*^j w^l = 0 " + ix(j, l), thr(j), n, right == zero);
      }
    }
  }
  return {led.checks()};
}

StabilityCheck verify_stabilization(const SigmaSchedule& sched, long i, long j, long n_lo, long n_hi) {
  if (i < 1 || j < 1) throw std::invalid_argument("verify_stabilization needs i, j >= 1");
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("bad n range");
  std::vector<char> holds;
  for (long n = n_lo; n <= n_hi; ++n) {
    SkewPair p = build_pair(n, sched);
    Powers pw(p, std::max(i, j));
    const auto size = static_cast<std::size_t>(n);
    const ExactMatrix one = ExactMatrix::identity(size);
    const ExactMatrix e = one - pw.w[static_cast<std::size_t>(i)] * pw.ws[static_cast<std::size_t>(i)];
    const ExactMatrix f = one - pw.ws[static_cast<std::size_t>(j)] * pw.w[static_cast<std::size_t>(j)];
    holds.push_back((e * f).is_zero() && (f * e).is_zero());
  }
  // The proof applies part (e) (and (c)) with exponents up to i + j - 1.
  long k0 = sched.least_k(2 * (i + j - 1));
  return summarize("(1-w^i w*^i)(1-w*^j w^j) = 0 " + ix(i, j), n_lo, n_hi, k0 < 0 ? -1 : sched.M(k0), holds);
}

Recipe parse_recipe(std::string_view text) {
  Recipe r;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  while (pos < text.size()) {
    if (text.compare(pos, 4, "inv(") == 0) {
      std::size_t depth = 1, q = pos + 4;
      while (q < text.size() && depth > 0) {
        if (text[q] == '(') ++depth;
        if (text[q] == ')') --depth;
        ++q;
      }
      if (depth != 0) throw std::invalid_argument("unbalanced inv( in recipe at " + std::to_string(pos));
      Polynomial g = Polynomial::parse(text.substr(pos + 4, q - pos - 5));
      if (!g.coeff(0).is_one()) throw std::invalid_argument("inverted polynomial must have constant term 1");
      r.push_back({RecipeToken::GInv, g});
      pos = q;
    } else if (text.compare(pos, 2, "w*") == 0) {
      r.push_back({RecipeToken::WStar, Polynomial(1)});
      pos += 2;
    } else if (text[pos] == 'w') {
      r.push_back({RecipeToken::W, Polynomial(1)});
      pos += 1;
    } else if (text[pos] == 'P') {
      r.push_back({RecipeToken::P, Polynomial(1)});
      pos += 1;
    } else if (text[pos] == 'Q') {
      r.push_back({RecipeToken::Q, Polynomial(1)});
      pos += 1;
    } else {
      throw std::invalid_argument("unexpected character in recipe at " + std::to_string(pos));
    }
    skip();
  }
  return r;
}

std::string recipe_str(const Recipe& r) {
  std::string out;
  for (const auto& t : r) {
    if (!out.empty()) out += " ";
    switch (t.kind) {
      case RecipeToken::W: out += "w"; break;
      case RecipeToken::WStar: out += "w*"; break;
      case RecipeToken::GInv: out += "inv(" + t.g.str() + ")"; break;
      case RecipeToken::P: out += "P"; break;
      case RecipeToken::Q: out += "Q"; break;
    }
  }
  return out.empty() ? "1" : out;
}

ExactMatrix eval_recipe(const Recipe& r, const SkewPair& p) {
  const auto size = static_cast<std::size_t>(p.n);
  ExactMatrix acc = ExactMatrix::identity(size);
  for (const auto& t : r) {
    switch (t.kind) {
      case RecipeToken::W: acc = acc * p.w; break;
      case RecipeToken::WStar: acc = acc * p.wstar; break;
      case RecipeToken::P: acc = acc * p.one_minus_wws; break;
      case RecipeToken::Q: acc = acc * p.one_minus_wsw; break;
      case RecipeToken::GInv: {
        ExactMatrix g(size, size), wp = ExactMatrix::identity(size);
        for (const auto& c : t.g.coeffs()) {
          g = g + c * wp;
          wp = wp * p.w;
        }
        acc = acc * unipotent_inverse(g);
        break;
      }
    }
  }
  return acc;
}

CornerReport corner_support_probe(const SigmaSchedule& sched, const Recipe& r, long n_lo, long n_hi) {
  CornerReport rep;
  rep.recipe = recipe_str(r);
  bool has_p = false, has_q = false;
  long run = 0, longest = 0;
  std::vector<Polynomial> gs;
  for (const auto& t : r) {
    has_p = has_p || t.kind == RecipeToken::P;
    has_q = has_q || t.kind == RecipeToken::Q;
    if (t.kind == RecipeToken::W || t.kind == RecipeToken::WStar) {
      longest = std::max(longest, ++run);
    } else {
      run = 0;
    }
    if (t.kind == RecipeToken::GInv) gs.push_back(t.g);
  }
  if (!has_p && !has_q) throw std::invalid_argument("recipe lies in neither ideal: it needs P or Q");
  rep.ideal = has_p && has_q ? 'S' : (has_p ? '1' : '2');

  long k0 = -1;
  for (long k = 6; k < 6 + 64 + static_cast<long>(sched.polys().size()); ++k) {
    bool divides = std::all_of(gs.begin(), gs.end(),
                               [&](const Polynomial& g) { return Polynomial::divmod(sched.F(k), g).second.is_zero(); });
    if (divides && sched.M(k) > 14 * longest) {
      k0 = k;
      break;
    }
  }
  std::vector<char> holds;
  for (long n = n_lo; n <= n_hi; ++n) {
    ExactMatrix z = eval_recipe(r, build_pair(n, sched));
    bool ok = true;
    for (std::size_t i = 0; i < z.rows() && ok; ++i)
      for (const auto& [j, v] : z.row(i)) {
        const long row = static_cast<long>(i), col = static_cast<long>(j);
        bool inside = rep.ideal == '1'   ? 2 * (row + 1) < n && 2 * (col + 1) < n
                      : rep.ideal == '2' ? 2 * (n - row) < n && 2 * (n - col) < n
                                         : false;
        if (!inside) {
          ok = false;
          break;
        }
      }
    holds.push_back(ok);
  }
  std::string what = rep.ideal == '1' ? "upper left corner" : (rep.ideal == '2' ? "lower right corner" : "vanishes");
  rep.check = summarize(rep.recipe + ": " + what, n_lo, n_hi, k0 < 0 ? -1 : sched.M(k0), holds);
  return rep;
}

bool StandDecomReport::ok() const {
  return hypotheses && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

StandDecomReport standdecom_check(const ExactMatrix& a, const ExactMatrix& astar, long n) {
  if (n < 2) throw std::invalid_argument("standdecom_check needs n >= 2");
  StandDecomReport rep;
  rep.n = n;
  const std::size_t size = a.rows();
  const ExactMatrix one = ExactMatrix::identity(size), zero(size, size);
  std::vector<ExactMatrix> ap{one}, asp{one};
  for (long i = 1; i <= n; ++i) {
    ap.push_back(ap.back() * a);
    asp.push_back(asp.back() * astar);
  }
  auto E = [&](long i) { return ap[static_cast<std::size_t>(i)] * asp[static_cast<std::size_t>(i)]; };
  auto F = [&](long i) { return asp[static_cast<std::size_t>(i)] * ap[static_cast<std::size_t>(i)]; };

  std::vector<NamedCheck> hyp;
  hyp.push_back({"a a* a = a", a * astar * a == a, ""});
  hyp.push_back({"a* a a* = a*", astar * a * astar == astar, ""});
  for (long i = 1; i <= n; ++i) {
    const ExactMatrix x = one - E(i), y = one - F(i);
    hyp.push_back({"(1-a^i a*^i)(1-a*^i a^i) = 0 = (1-a*^i a^i)(1-a^i a*^i), i = " + std::to_string(i),
                   (x * y).is_zero() && (y * x).is_zero(), ""});
  }
  rep.hypotheses = std::all_of(hyp.begin(), hyp.end(), [](const auto& c) { return c.holds; });
  for (auto& h : hyp)
    if (!h.holds) h.detail = "hypothesis fails";
  rep.checks = hyp;
  if (!rep.hypotheses) return rep;

  bool commute = true, idem = true, chain = true;
  for (long i = 1; i <= n; ++i) {
    idem = idem && ap[static_cast<std::size_t>(i)] * asp[static_cast<std::size_t>(i)] * ap[static_cast<std::size_t>(i)] ==
                       ap[static_cast<std::size_t>(i)] &&
           asp[static_cast<std::size_t>(i)] * ap[static_cast<std::size_t>(i)] * asp[static_cast<std::size_t>(i)] ==
               asp[static_cast<std::size_t>(i)];
    for (long j = 1; j <= n; ++j) commute = commute && E(i) * F(j) == F(j) * E(i);
    if (i < n) {
      // e >= f means e f = f e = f.
      chain = chain && E(i) * E(i + 1) == E(i + 1) && E(i + 1) * E(i) == E(i + 1) && F(i) * F(i + 1) == F(i + 1) &&
              F(i + 1) * F(i) == F(i + 1);
    }
  }
  rep.checks.push_back({"(1) a^i a*^i and a*^j a^j commute", commute, ""});
  rep.checks.push_back({"(2) a^i = a^i a*^i a^i and a*^i = a*^i a^i a*^i", idem, ""});
  rep.checks.push_back({"(2) decreasing chains of idempotents", chain, ""});

  const ExactMatrix P = one - a * astar, Q = one - astar * a;
  std::vector<ExactMatrix> f, g;
  for (long k = 0; k < n; ++k) {
    f.push_back(ap[static_cast<std::size_t>(k)] * P * asp[static_cast<std::size_t>(k)]);
    g.push_back(asp[static_cast<std::size_t>(k)] * Q * ap[static_cast<std::size_t>(k)]);
  }
  std::vector<ExactMatrix> all = f;
  all.insert(all.end(), g.begin(), g.end());
  bool orth = true;
  for (std::size_t x = 0; x < all.size(); ++x) {
    orth = orth && all[x] * all[x] == all[x];
    for (std::size_t y = 0; y < all.size(); ++y)
      if (x != y) orth = orth && (all[x] * all[y]).is_zero();
  }
  rep.checks.push_back({"(3a) f_k, g_k pairwise orthogonal idempotents", orth, ""});
  bool up = true, down = true, equiv = true;
  for (long j = 0; j + 1 < n; ++j) {
    auto J = static_cast<std::size_t>(j);
    up = up && a * f[J] * astar == f[J + 1] && astar * g[J] * a == g[J + 1];
    down = down && astar * f[J + 1] * a == f[J] && a * g[J + 1] * astar == g[J];
    // f_j ~ f_{j+1} via x = f_{j+1} a, y = a*: y x = f_j, x y = f_{j+1}.
    equiv = equiv && astar * (f[J + 1] * a) == f[J] && (f[J + 1] * a) * astar == f[J + 1] &&
            a * (g[J + 1] * astar) == g[J] && (g[J + 1] * astar) * a == g[J + 1];
  }
  rep.checks.push_back({"(3b) a f_j a* = f_{j+1}, a* g_j a = g_{j+1}", up, ""});
  rep.checks.push_back({"(3c) a* f_j a = f_{j-1}, a g_j a* = g_{j-1}", down, ""});
  rep.checks.push_back({"(3d) f_0 ~ ... ~ f_{n-1}, g_0 ~ ... ~ g_{n-1}", equiv, ""});
  return rep;
}

bool TauRankReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

TauRankReport tau_rank_identities(const SigmaSchedule& sched, long n, long T) {
  if (n < 1 || T < 2) throw std::invalid_argument("tau_rank_identities needs n >= 1 and T >= 2");
  TauRankReport rep;
  rep.n = n;
  rep.T = T;

  // Component t (size t) data: E_i = w^i w*^i, F_i = w*^i w^i, i <= n+1.
  struct Comp {
    std::vector<ExactMatrix> E, F;
  };
  std::vector<Comp> comps(static_cast<std::size_t>(T + 1));
  for (long t = 1; t <= T; ++t) {
    SkewPair p = build_pair(t, sched);
    Powers pw(p, n + 1);
    Comp& c = comps[static_cast<std::size_t>(t)];
    for (long i = 0; i <= n + 1; ++i) {
      c.E.push_back(pw.w[static_cast<std::size_t>(i)] * pw.ws[static_cast<std::size_t>(i)]);
      c.F.push_back(pw.ws[static_cast<std::size_t>(i)] * pw.w[static_cast<std::size_t>(i)]);
    }
  }
  auto one = [](long t) { return ExactMatrix::identity(static_cast<std::size_t>(t)); };
  auto orth_at = [&](long t, long m) {
    const Comp& c = comps[static_cast<std::size_t>(t)];
    for (long i = 1; i <= m + 1; ++i) {
      ExactMatrix x = one(t) - c.E[static_cast<std::size_t>(i)], y = one(t) - c.F[static_cast<std::size_t>(i)];
      if (!(x * y).is_zero() || !(y * x).is_zero()) return false;
    }
    return true;
  };

  // K_m: least K >= max(2, K_{m-1} + 1) with the orthogonality on every t in (K, T].
  long prev = 1;
  for (long m = 1; m <= n; ++m) {
    long K = T;
    while (K - 1 >= std::max(2L, prev + 1) && orth_at(K, m)) --K;
    if (!orth_at(T, m)) {
      rep.checks.push_back({"K_" + std::to_string(m) + " exists below T", false,
                            "orthogonality fails at t = T = " + std::to_string(T)});
      return rep;
    }
    if (K >= T - 1)
      rep.checks.push_back({"K_" + std::to_string(m) + " leaves room below T", false,
                            "K = " + std::to_string(K) + " is too close to T to test anything beyond it"});
    rep.K.push_back(K);
    prev = K;
  }
  auto Kof = [&](long m) { return m == 0 ? 1L : rep.K[static_cast<std::size_t>(m - 1)]; };

  auto p_of = [&](long t) { return ExactMatrix::unit(static_cast<std::size_t>(t), 1, 1); };
  auto g_of = [&](long m, long t) {
    ExactMatrix g(static_cast<std::size_t>(t), static_cast<std::size_t>(t));
    if (m >= 1 && t >= m + 1 && t <= Kof(m))
      for (long d = 2; d <= t - m; ++d) g.set(static_cast<std::size_t>(d - 1), static_cast<std::size_t>(d - 1), Rational(1));
    return g;
  };
  auto rk = [](const ExactMatrix& m) { return static_cast<long>(rank(m)); };

  struct Tally {
    std::string name;
    std::string first_failure;
  };
  std::vector<Tally> tallies;
  std::map<std::string, std::size_t> where;
  auto check = [&](const std::string& name, long t, bool ok) {
    auto it = where.find(name);
    if (it == where.end()) {
      it = where.emplace(name, tallies.size()).first;
      tallies.push_back({name, ""});
    }
    if (!ok && tallies[it->second].first_failure.empty()) tallies[it->second].first_failure = "t = " + std::to_string(t);
  };

  for (long m = 1; m <= n; ++m) {
    const std::string M = std::to_string(m);
    for (long t = Kof(m) + 1; t <= T; ++t) {
      const Comp& c = comps[static_cast<std::size_t>(t)];
      for (long i = 0; i <= m; ++i) {
        auto I = static_cast<std::size_t>(i);
        check("rank(w^i w*^i - w^(i+1) w*^(i+1))_t = 1, i <= " + M + ", t > K_" + M, t,
              rk(c.E[I] - c.E[I + 1]) == 1 && rk(c.F[I] - c.F[I + 1]) == 1);
      }
      auto M1 = static_cast<std::size_t>(m + 1);
      check("rank(1 - w^(n+1) w*^(n+1))_t = n+1, n = " + M + ", t > K_" + M, t,
            rk(one(t) - c.E[M1]) == m + 1 && rk(one(t) - c.F[M1]) == m + 1);
      check("rank(w^(n+1) w*^(n+1))_t = t-n-1, n = " + M + ", t > K_" + M, t,
            rk(c.E[M1]) == t - m - 1 && rk(c.F[M1]) == t - m - 1);
    }
    for (long t = 1; t <= T; ++t) {
      ExactMatrix g = g_of(m, t), p = p_of(t);
      bool in_range = t >= m + 1 && t <= Kof(m);
      check("g_" + M + " idempotent, orthogonal to p_t, rank t-n-1 on [n+1, K_n]", t,
            g * g == g && (g * p).is_zero() && (p * g).is_zero() && rk(g) == (in_range ? t - m - 1 : 0));
      if (in_range) {
        long r = rk(p + g);
        check("rank(p_t + (g_n)_t) = t-n, n = " + M, t, r == t - m);
        const Comp& c = comps[static_cast<std::size_t>(t)];
        if (m == 1)
          check("rank(p_t + (g_1)_t) = rank((ww*)_t) on [2, K_1]", t, r == rk(c.E[1]));
        else if (t <= Kof(m - 1))
          check("rank(p_t + (g_n)_t) = rank((g_(n-1))_t) on [n+1, K_(n-1)], n = " + M, t, r == rk(g_of(m - 1, t)));
        else
          check("rank(p_t + (g_n)_t) = rank((w^n w*^n)_t) on (K_(n-1), K_n], n = " + M, t,
                r == rk(c.E[static_cast<std::size_t>(m)]));
      }
    }
  }

  // Componentwise ranks of the representatives of tau on the generators.
  auto rank_x = [&](long m, long t) {
    const Comp& c = comps[static_cast<std::size_t>(t)];
    if (m == 0) return rk(c.E[1]);
    return t <= Kof(m) ? rk(g_of(m, t)) : rk(c.E[static_cast<std::size_t>(m + 1)]);
  };
  auto rank_x_alt = [&](long m, long t) {
    const Comp& c = comps[static_cast<std::size_t>(t)];
    if (m == 0) return rk(c.F[1]);
    return t <= Kof(m) ? rk(g_of(m, t)) : rk(c.F[static_cast<std::size_t>(m + 1)]);
  };
  auto rank_yz = [&](long m, long t, bool y) {
    const Comp& c = comps[static_cast<std::size_t>(t)];
    const auto& X = y ? c.E : c.F;
    if (m == 0) return rk(one(t) - X[1]);
    if (t <= Kof(m)) return t >= m + 1 ? 1L : 0L;
    return rk(X[static_cast<std::size_t>(m)] - X[static_cast<std::size_t>(m + 1)]);
  };
  auto rank_a = [](long m, long t) { return t == m ? 1L : 0L; };
  for (long t = 1; t <= T; ++t) {
    check("tau(x_0) + tau(y_0) = [1] = tau(x_0) + tau(z_0)", t,
          rank_x(0, t) + rank_yz(0, t, true) == t && rank_x(0, t) + rank_yz(0, t, false) == t &&
              rank_x(0, t) == rank_x_alt(0, t));
    for (long m = 1; m <= n; ++m) {
      const std::string M = std::to_string(m);
      check("[w^(n+1) w*^(n+1)] = [w*^(n+1) w^(n+1)] in tau(x_n), n = " + M, t, rank_x(m, t) == rank_x_alt(m, t));
      check("tau(x_n) + tau(y_n) = tau(x_(n-1)), n = " + M, t,
            rank_x(m, t) + rank_yz(m, t, true) == rank_x(m - 1, t));
      check("tau(x_n) + tau(z_n) = tau(x_(n-1)), n = " + M, t,
            rank_x(m, t) + rank_yz(m, t, false) == rank_x(m - 1, t));
      check("tau(y_n) + tau(a_n) = tau(y_(n-1)), n = " + M, t,
            rank_yz(m, t, true) + rank_a(m, t) == rank_yz(m - 1, t, true));
      check("tau(z_n) + tau(a_n) = tau(z_(n-1)), n = " + M, t,
            rank_yz(m, t, false) + rank_a(m, t) == rank_yz(m - 1, t, false));
    }
  }
  for (const auto& tl : tallies) rep.checks.push_back({tl.name, tl.first_failure.empty(), tl.first_failure});
  return rep;
}

}  // namespace fimalg
