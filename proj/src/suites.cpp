#include "fimalg/suites.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "fimalg/closure_calculus.hpp"
#include "fimalg/lamplighter.hpp"
#include "fimalg/presented_monoid.hpp"
#include "fimalg/rational_series.hpp"
#include "fimalg/representation.hpp"
#include "fimalg/semigroup_algebra.hpp"

namespace fimalg {

using nlohmann::ordered_json;

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

std::string SuiteReport::to_json() const {
  ordered_json j;
  j["suite"] = suite;
  j["T"] = T;
  j["ok"] = ok();
  j["checks"] = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["holds"] = c.holds;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    j["checks"].push_back(std::move(cj));
  }
  return j.dump(2);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lemma-4.4", "lemma-4.7", "lemma-5.1", "cor-5.2",   "prop-5.3",      "lemma-5.4", "thm-5.5-ranks",
      "eq-6.1",    "hadamard",  "lemma-6.9", "example-2-3", "monoid-oracle", "embedding"};
  return names;
}

namespace {

using Checks = std::vector<SuiteCheck>;

void add(Checks& out, std::string name, bool ok, std::string detail = "") {
  out.push_back({std::move(name), ok, std::move(detail)});
}

std::vector<SigmaSchedule> schedules(const SuiteOptions& o) {
  if (o.schedule) return {*o.schedule};
  return {SigmaSchedule({Polynomial::parse("1+x")}),
          SigmaSchedule({Polynomial::parse("1+x"), Polynomial::parse("1-x+x^2")})};
}

std::string stability_detail(const StabilityCheck& c) {
  std::string d = "stabilizes from " + std::to_string(c.stabilizes_from) + ", proof threshold " +
                  std::to_string(c.proof_threshold);
  if (!c.failures.empty()) d += ", last failure " + std::to_string(c.failures.back());
  return d;
}

void add_stability(Checks& out, const std::string& prefix, const StabilityCheck& c) {
  add(out, prefix + c.name, c.threshold_sufficient, stability_detail(c));
}

void add_identity(Checks& out, const IdentityCheck& c) {
  add(out, c.name, c.holds, c.holds ? "" : "first failure at component " + std::to_string(c.first_failure));
}

void add_closure(Checks& out, const ClosureReport& r) {
  for (const auto& c : r.checks) add_identity(out, c);
  for (const auto& c : r.ranks) {
    std::string got = c.result.exact ? c.result.exact->str()
                                     : "[" + c.result.lower().str() + ", " + c.result.upper().str() + "]";
    add(out, c.name + " = " + c.expected.str(), c.holds, got);
  }
}

// Quotient of A by the socle: a == b in B iff a - b is supported on h_n, n <= bound.
Checks lemma_4_4(long L) {
  Checks out;
  const AlgebraElem one = AlgebraElem::one(), s = AlgebraElem::s(), ss = AlgebraElem::s_star();
  const AlgebraElem P = one - s * ss, Q = one - ss * s;
  const long bound = 2 * L + 4;
  auto same_mod_soc = [&](const AlgebraElem& a, const AlgebraElem& b) { return is_socle_supported(a - b, bound); };

  bool left = true, right = true;
  for (long l = 0; l <= L; ++l)
    for (long k = 0; k <= l; ++k)
      for (long m = 0; m <= l; ++m) {
        const AlgebraElem w = AlgebraElem::monomial(k, l, m);
        left = left && same_mod_soc(P * w, k > 0 ? AlgebraElem() : P * pow(ss, static_cast<unsigned>(l - m)));
        const AlgebraElem v = pow(ss, static_cast<unsigned>(k)) * pow(s, static_cast<unsigned>(l)) *
                              pow(ss, static_cast<unsigned>(m));
        right = right && same_mod_soc(Q * v, k > 0 ? AlgebraElem() : Q * pow(s, static_cast<unsigned>(l - m)));
      }
  add(out, "(1-ss*) s^k s*^l s^m = [k=0] (1-ss*) s*^(l-m) mod socle, l <= " + std::to_string(L), left);
  add(out, "(1-s*s) s*^k s^l s*^m = [k=0] (1-s*s) s^(l-m) mod socle, l <= " + std::to_string(L), right);

  auto e = [&](long i, long j) { return pow(s, static_cast<unsigned>(i)) * P * pow(ss, static_cast<unsigned>(j)); };
  auto f = [&](long i, long j) { return pow(ss, static_cast<unsigned>(i)) * Q * pow(s, static_cast<unsigned>(j)); };
  const long U = std::min(L, 3L);
  bool units_i = true, units_j = true, ij = true, nonzero = true;
  for (long i = 0; i <= U; ++i)
    for (long j = 0; j <= U; ++j) {
      nonzero = nonzero && !is_socle_supported(e(i, j), bound) && !is_socle_supported(f(i, j), bound);
      for (long k = 0; k <= U; ++k)
        for (long l = 0; l <= U; ++l) {
          units_i = units_i && same_mod_soc(e(i, j) * e(k, l), j == k ? e(i, l) : AlgebraElem());
          units_j = units_j && same_mod_soc(f(i, j) * f(k, l), j == k ? f(i, l) : AlgebraElem());
          ij = ij && is_socle_supported(e(i, j) * f(k, l), bound) && is_socle_supported(f(i, j) * e(k, l), bound);
        }
    }
  add(out, "s^i (1-ss*) s*^j are matrix units mod socle", units_i);
  add(out, "s*^i (1-s*s) s^j are matrix units mod socle", units_j);
  add(out, "I J = J I = 0 mod socle on the matrix units", ij);
  add(out, "matrix units are nonzero mod socle", nonzero);
  return out;
}

Checks lemma_4_7(long T) {
  Checks out;
  const std::vector<Polynomial> fs = {Polynomial::parse("1+x"), Polynomial::parse("1-x"),
                                      Polynomial::parse("1-x+x^2"), Polynomial::parse("1+2x-3x^3")};
  for (const auto& f : fs) {
    TruncatedRep fr = represent(eval_poly(f, AlgebraElem::s()), T);
    TruncatedRep inv = localize_inverse(f, T);
    bool ok = fr * inv == TruncatedRep::identity(T) && inv * fr == TruncatedRep::identity(T);
    bool unip = true;
    for (long n = 0; n <= T; ++n) unip = unip && is_unipotent(fr.component(n));
    add(out, "f(s) unipotent and inverted in every component, f = " + f.str(), ok && unip);
  }
  bool units = true;
  for (long k = 0; k <= std::min(T, 5L); ++k)
    for (long a = 1; a <= k + 1; ++a)
      for (long b = 1; b <= k + 1; ++b) {
        TruncatedRep r = represent(h_matrix_unit(k, a, b), T);
        for (long n = 0; n <= T; ++n)
          units = units && r.component(n) == (n == k ? ExactMatrix::unit(static_cast<std::size_t>(k + 1),
                                                                          static_cast<std::size_t>(a),
                                                                          static_cast<std::size_t>(b))
                                                     : ExactMatrix(static_cast<std::size_t>(n + 1),
                                                                   static_cast<std::size_t>(n + 1)));
      }
  add(out, "image contains the matrix units of every M_{n+1}, n <= 5", units);

  const long Tp = std::min(T, 24L);
  std::vector<TermSample> samples = {
      {'A', 0, 3, 0, Polynomial(1)},           {'A', 1, 2, 0, Polynomial::parse("1 + x")},
      {'B', 1, 2, 0, Polynomial::parse("1 - x")}, {'B', 0, 0, 0, Polynomial::parse("1 + x")},
      {'C', 1, 1, 1, Polynomial::parse("1 + x")}, {'D', 2, 1, 3, Polynomial(1)},
  };
  auto probe = term_form_closure_probe(samples, Polynomial::parse("1 - x + x^2"), Tp);
  for (const auto& c : probe.cases)
    add(out, "term forms closed: " + c.sample + " * " + c.multiplier, c.representable,
        "cutoff " + std::to_string(c.cutoff) + ", residual " + std::to_string(c.residual_entries));
  for (long j = 0; j <= 2; ++j)
    for (long i = 0; i <= 2; ++i) {
      auto c = ideal_product_probe({'A', 1, j, 0, Polynomial::parse("1 + x")}, {'B', i, 2, 0, Polynomial::parse("1 - x")},
                                   Tp);
      add(out, "(A) * (B) lies in the socle: " + c.a + " * " + c.b, c.holds,
          "last nonzero component " + std::to_string(c.last_nonzero) + ", bound " + std::to_string(c.predicted_bound));
    }
  return out;
}

Checks hadamard_suite(long T) {
  Checks out;
  const std::vector<std::string> series = {"1 + 2x - x^2", "1/(1-x)", "1/(1-2x)", "1/((1+x)(1-x))"};
  for (std::size_t i = 0; i < series.size(); ++i)
    for (std::size_t j = i; j < series.size(); ++j) {
      auto a = RationalSeries::parse(series[i]), b = RationalSeries::parse(series[j]);
      auto r = verify_hadamard_identity(a, b, T);
      for (const auto& c : r.checks) add_identity(out, c);
    }
  return out;
}

Checks lemma_6_9(long T) {
  Checks out;
  const std::vector<std::string> fs = {"1+x",       "1-x",         "1+2x",         "1-x+x^2",      "1+x^2",
                                       "1-3x+2x^2", "1+x+x^2+x^3", "1-x^3",        "1+1/2x-x^2", "1+x-2x^2+x^4"};
  for (const auto& text : fs) {
    auto f = Polynomial::parse(text);
    auto r = verify_inverse_formula(f, T);
    add(out, "(f(s)*)^{-1} congruence, f = " + f.str(), r.ok,
        "holds on every component >= " + std::to_string(r.least_from) + ", degree " + std::to_string(r.degree));
  }
  return out;
}

Checks embedding_suite(long T) {
  Checks out;
  auto r = verify_embedding_suite(6, T);
  for (const auto& c : r.checks) add(out, c.name, c.holds, c.detail);
  return out;
}

Checks monoid_suite() {
  Checks out;
  auto r = monoid_oracle_agreement(4, 3, 12, 6);
  std::string detail = std::to_string(r.words) + " words, " + std::to_string(r.components) + " oracle components, " +
                       std::to_string(r.unresolved_pairs) + " unresolved pairs";
  for (const auto& e : r.examples) detail += "; " + e;
  add(out, "equals_M agrees with the oracle, size <= 4, index <= 3", r.disagreements == 0, detail);
  auto battery = property_battery_M(2, 2);
  std::string bd;
  for (const auto& c : battery.counterexamples) bd += c.property + ": " + c.detail + "; ";
  add(out, "pedestal properties, size <= 2, index <= 2", battery.ok(), bd);
  return out;
}

}  // namespace

MonoidAgreement monoid_oracle_agreement(long word_size, long word_index, long oracle_size, long oracle_index) {
  MonoidAgreement r;
  const MonoidPresentation pres = m_presentation(oracle_index);
  const std::vector<MWord> words = enumerate_words(word_index, word_size);
  r.words = words.size();
  auto key_of = [&](const MWord& w) {
    CountVec c = pres.encode(w);
    return std::string(c.begin(), c.end());
  };
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(words.size() * 2);
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(key_of(words[i]), i);

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(words.size(), kNone);
  std::vector<std::string> canon(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) canon[i] = canonicalize_M(words[i]).str();

  for (std::size_t i = 0; i < words.size(); ++i) {
    if (comp[i] != kNone) continue;
    const std::size_t id = r.components++;
    for (const auto& c : oracle_component(pres, pres.encode(words[i]), oracle_size, oracle_index)) {
      auto it = index.find(std::string(c.begin(), c.end()));
      if (it == index.end()) continue;
      comp[it->second] = id;
      if (canon[it->second] != canon[i]) {
        ++r.disagreements;
        if (r.examples.size() < 5) r.examples.push_back(words[i].str() + " ~ " + words[it->second].str());
      }
    }
  }
  // Same canonical form, different oracle components.
  std::unordered_map<std::string, std::map<std::size_t, std::size_t>> by_canon;
  for (std::size_t i = 0; i < words.size(); ++i) ++by_canon[canon[i]][comp[i]];
  for (const auto& [k, comps] : by_canon) {
    std::size_t total = 0, same = 0;
    for (const auto& [c, n] : comps) {
      total += n;
      same += n * (n - 1) / 2;
    }
    r.unresolved_pairs += total * (total - 1) / 2 - same;
  }
  return r;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = name;
  rep.T = opts.T;
  Checks& out = rep.checks;
  const long T = opts.T;
  if (name == "lemma-4.4") {
    out = lemma_4_4(4);
  } else if (name == "lemma-4.7") {
    out = lemma_4_7(T);
  } else if (name == "lemma-5.1") {
    for (const auto& s : schedules(opts)) {
      auto r = verify_wn_lemma(s, "abcdef", 5, 1, 200);
      for (const auto& c : r.checks) add_stability(out, s.str() + " ", c);
    }
  } else if (name == "cor-5.2") {
    for (const auto& s : schedules(opts))
      for (long i = 1; i <= 4; ++i)
        for (long j = 1; j <= 4; ++j) add_stability(out, s.str() + " ", verify_stabilization(s, i, j, 1, 200));
  } else if (name == "prop-5.3") {
    for (const auto& s : schedules(opts))
      for (const char* recipe : {"P", "w P w*", "w inv(1+x) P w*", "w* w w inv(1+x) P w*", "Q", "w* Q w",
                                 "w* inv(1+x) Q w", "w P w* Q", "Q w P"}) {
        auto r = corner_support_probe(s, parse_recipe(recipe), 2, 120);
        add_stability(out, s.str() + " ", r.check);
      }
  } else if (name == "lemma-5.4") {
    for (const auto& s : schedules(opts))
      for (long n = 2; n <= 4; ++n) {
        auto p = build_pair(80, s);
        auto r = standdecom_check(p.w, p.wstar, n);
        for (const auto& c : r.checks)
          add(out, s.str() + " w_80, n = " + std::to_string(n) + ": " + c.name, c.holds, c.detail);
      }
  } else if (name == "thm-5.5-ranks") {
    SigmaSchedule s = opts.schedule ? *opts.schedule : SigmaSchedule({Polynomial::parse("1+x")});
    auto r = tau_rank_identities(s, 4, std::max(T, 8L));
    std::string ks;
    for (long k : r.K) ks += (ks.empty() ? "" : ", ") + std::to_string(k);
    add(out, "K_1..K_4 found below T", r.K.size() == 4, ks);
    for (const auto& c : r.checks) add(out, c.name, c.holds, c.detail);
  } else if (name == "eq-6.1") {
    add_closure(out, verify_equivalence_identities(T));
  } else if (name == "hadamard") {
    out = hadamard_suite(T);
  } else if (name == "lemma-6.9") {
    out = lemma_6_9(T);
  } else if (name == "example-2-3") {
    add_closure(out, example_suite_s_plus_sstar(T));
  } else if (name == "monoid-oracle") {
    out = monoid_suite();
  } else if (name == "embedding") {
    out = embedding_suite(T);
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return rep;
}

}  // namespace fimalg
