#include <doctest.h>

#include "fimalg/skew_construction.hpp"

using namespace fimalg;

namespace {

SigmaSchedule one_plus_x() { return SigmaSchedule({Polynomial::parse("1+x")}); }

SigmaSchedule two_polys() { return SigmaSchedule({Polynomial::parse("1+x"), Polynomial::parse("1-x+x^2")}); }

std::string failures(const StabilityCheck& c) {
  std::string s;
  for (long n : c.failures) s += std::to_string(n) + " ";
  return s;
}

}  // namespace

TEST_CASE("schedule bookkeeping") {
  auto s = one_plus_x();
  CHECK(s.M(0) == 1);
  CHECK(s.M(1) == 4);
  for (long k = 2; k <= 10; ++k) CHECK(s.M(k) == 2 * (k + 1));
  CHECK(s.regime(3) == 0);
  CHECK(s.regime(4) == 1);
  CHECK(s.regime(7) == 2);
  CHECK(s.least_k(10) == 5);
  CHECK(s.least_k(0, Polynomial::parse("1-x")) == -1);

  auto t = two_polys();
  CHECK(t.N(2) == 3);
  CHECK(t.M(2) == 18);
  CHECK(t.regime(17) == 1);
  CHECK(t.regime(18) == 2);

  auto unpadded = SigmaSchedule({Polynomial::parse("1+x")}, false);
  CHECK(unpadded.regime(3) == 0);
  CHECK_THROWS_AS((void)unpadded.regime(50), std::out_of_range);

  auto j = SigmaSchedule::from_json(R"([[1, 1], [1, "-1/2"]])");
  CHECK(j.polys().size() == 2);
  CHECK(j.polys()[1].coeff(1) == Rational(-1, 2));
  CHECK_THROWS_AS(SigmaSchedule::from_json("[[2, 1]]"), std::invalid_argument);
  CHECK_THROWS_AS(SigmaSchedule::from_json("{}"), std::invalid_argument);
}

TEST_CASE("small pairs") {
  auto s = one_plus_x();
  auto p1 = build_pair(1, s);
  CHECK(p1.w.is_zero());
  CHECK(p1.wstar.is_zero());

  auto p3 = build_pair(3, s);
  CHECK(p3.one_minus_wws == ExactMatrix::unit(3, 1, 1));
  CHECK(p3.one_minus_wsw == ExactMatrix::unit(3, 3, 3));

  // In regime k, w* is the upper shift minus the coefficient corrections.
  auto p5 = build_pair(5, s);
  CHECK(p5.regime == 1);
  ExactMatrix expect = upper_shift(5);
  expect.add_to(0, 0, Rational(-1));
  expect.add_to(4, 4, Rational(-1));
  CHECK(p5.wstar == expect);
  CHECK(p5.w == lower_shift(5));
  CHECK(rank(p5.one_minus_wws) == 1);
  CHECK(rank(p5.one_minus_wsw) == 1);
  CHECK_THROWS_AS(build_pair(0, s), std::invalid_argument);
}

TEST_CASE("lemma parts hold from their proof thresholds") {
  for (const auto& s : {one_plus_x(), two_polys()}) {
    auto rep = verify_wn_lemma(s, "abcdef", 5, 1, 120);
    for (const auto& c : rep.checks) {
      INFO(c.name, " threshold ", c.proof_threshold, " failures ", failures(c));
      CHECK(c.threshold_sufficient);
    }
    CHECK(rep.ok());
  }
}

TEST_CASE("parts (a) and (b) hold for every n") {
  auto rep = verify_wn_lemma(two_polys(), "ab", 0, 1, 60);
  for (const auto& c : rep.checks) {
    INFO(c.name);
    CHECK(c.failures.empty());
  }
}

TEST_CASE("parts (c)-(f) genuinely need a threshold") {
  // Before the first correction w* is the plain upper shift and
  // w* w (1 - ww*) = (1 - ww*) fails.
  auto rep = verify_wn_lemma(one_plus_x(), "c", 2, 1, 40);
  bool some_failure = false;
  for (const auto& c : rep.checks) some_failure = some_failure || !c.failures.empty();
  CHECK(some_failure);
}

TEST_CASE("stabilization of the orthogonality relations") {
  auto s = one_plus_x();
  for (long i = 1; i <= 4; ++i)
    for (long j = 1; j <= 4; ++j) {
      auto c = verify_stabilization(s, i, j, 1, 80);
      INFO(c.name, " failures ", failures(c));
      CHECK(c.threshold_sufficient);
      CHECK(c.stabilizes_from >= 1);
      CHECK(c.stabilizes_from <= c.proof_threshold);
    }
  CHECK_THROWS_AS(verify_stabilization(s, 0, 1, 1, 5), std::invalid_argument);
}

TEST_CASE("recipes") {
  auto r = parse_recipe("w* w inv(1+x) P w*");
  REQUIRE(r.size() == 5);
  CHECK(r[2].kind == RecipeToken::GInv);
  CHECK(recipe_str(r) == "w* w inv(1 + x) P w*");
  CHECK_THROWS_AS(parse_recipe("w v"), std::invalid_argument);
  CHECK_THROWS_AS(parse_recipe("inv(2+x) P"), std::invalid_argument);

  auto s = one_plus_x();
  auto p = build_pair(7, s);
  ExactMatrix g = ExactMatrix::identity(7) + p.w;
  CHECK(eval_recipe(parse_recipe("inv(1+x)"), p) * g == ExactMatrix::identity(7));
  CHECK(eval_recipe(parse_recipe("w P"), p) == p.w * p.one_minus_wws);
}

TEST_CASE("corner support") {
  auto s = one_plus_x();
  for (const char* text : {"w inv(1+x) P w*", "w* w w inv(1+x) P w*", "P", "w* Q w", "w P w* Q"}) {
    auto rep = corner_support_probe(s, parse_recipe(text), 2, 120);
    INFO(rep.check.name, " threshold ", rep.check.proof_threshold, " failures ", failures(rep.check));
    CHECK(rep.check.proof_threshold > 0);
    CHECK(rep.check.threshold_sufficient);
  }
  CHECK(corner_support_probe(s, parse_recipe("P"), 2, 4).ideal == '1');
  CHECK(corner_support_probe(s, parse_recipe("Q"), 2, 4).ideal == '2');
  CHECK(corner_support_probe(s, parse_recipe("P Q"), 2, 4).ideal == 'S');
  CHECK_THROWS_AS(corner_support_probe(s, parse_recipe("w w*"), 2, 4), std::invalid_argument);
  // 1 - x never divides F(k).
  CHECK(corner_support_probe(s, parse_recipe("inv(1-x) P"), 2, 4).check.proof_threshold == -1);
}

TEST_CASE("standard decomposition relations") {
  auto s = one_plus_x();
  auto p = build_pair(40, s);
  auto rep = standdecom_check(p.w, p.wstar, 4);
  for (const auto& c : rep.checks) {
    INFO(c.name);
    CHECK(c.holds);
  }
  CHECK(rep.ok());

  // The plain shifts fail the orthogonality hypothesis at small n.
  auto bad = standdecom_check(lower_shift(3), upper_shift(3), 2);
  CHECK_FALSE(bad.hypotheses);
  CHECK_FALSE(bad.ok());
}

TEST_CASE("rank identities behind tau") {
  for (long n = 1; n <= 3; ++n) {
    auto rep = tau_rank_identities(one_plus_x(), n, 40);
    for (const auto& c : rep.checks) {
      INFO("n = ", n, ": ", c.name, " ", c.detail);
      CHECK(c.holds);
    }
    REQUIRE(rep.K.size() == static_cast<std::size_t>(n));
    for (std::size_t i = 1; i < rep.K.size(); ++i) CHECK(rep.K[i] > rep.K[i - 1]);
  }
}
