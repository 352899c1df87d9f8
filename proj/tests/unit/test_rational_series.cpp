#include <doctest.h>

#include <random>

#include "fimalg/rational_series.hpp"

using namespace fimalg;

namespace {

RationalSeries series(const char* text) { return RationalSeries::parse(text); }

// Random recurrence of order <= 4 with small integer data, given by its
// first terms and recurrence coefficients, expanded directly.
struct RawRecurrence {
  std::vector<Rational> init;
  std::vector<Rational> rec;  // a_n = sum rec[i] a_{n-1-i}
  std::vector<Rational> expand(std::size_t n) const {
    std::vector<Rational> a = init;
    while (a.size() < n) {
      Rational v(0);
      for (std::size_t i = 0; i < rec.size(); ++i) v += rec[i] * a[a.size() - 1 - i];
      a.push_back(v);
    }
    a.resize(n);
    return a;
  }
  RationalSeries to_series() const {
    std::vector<Rational> den{Rational(1)};
    for (const auto& r : rec) den.push_back(-r);
    Polynomial q(den);
    std::vector<Rational> num = init;
    Polynomial p = Polynomial(num) * q;
    std::vector<Rational> c = p.coeffs();
    if (c.size() > init.size()) c.resize(init.size());
    return {Polynomial(c), q};
  }
};

RawRecurrence random_recurrence(std::mt19937& rng) {
  std::uniform_int_distribution<int> order(1, 4), v(-3, 3);
  RawRecurrence r;
  int d = order(rng);
  for (int i = 0; i < d; ++i) {
    r.init.emplace_back(v(rng));
    r.rec.emplace_back(v(rng));
  }
  if (r.rec.back().is_zero()) r.rec.back() = 1;
  return r;
}

}  // namespace

TEST_CASE("parsing and coefficients") {
  auto g = series("1/(1-x^2)");
  CHECK(g.coeffs(6) == std::vector<Rational>{1, 0, 1, 0, 1, 0});
  auto f = series("x^3/(1-x)");
  CHECK(f.coeffs(5) == std::vector<Rational>{0, 0, 0, 1, 1});
  CHECK(series("1/(2-2x)").coeff(4) == Rational(1, 2));
  CHECK(series("1 + 2x").coeffs(3) == std::vector<Rational>{1, 2, 0});
  CHECK_THROWS(series("1/x"));
  CHECK(series("x/x") == series("1"));
}

TEST_CASE("Hadamard products of geometric series") {
  auto u = RationalSeries::hadamard_unit();
  auto two = series("1/(1-2x)");
  auto h = hadamard(u, two);
  CHECK(h == two);
  auto c = h.coeffs(100);
  for (std::size_t n = 0; n < 100; ++n) CHECK(c[n] == Rational::pow2(static_cast<long>(n)));
  auto a = series("(1+3x)/(1-x-x^2)");
  CHECK(hadamard(a, u) == a);
  CHECK(hadamard(u, a) == a);
}

TEST_CASE("Hadamard products of random recurrences match termwise products") {
  std::mt19937 rng(31337);
  for (int t = 0; t < 20; ++t) {
    RawRecurrence ra = random_recurrence(rng), rb = random_recurrence(rng);
    auto a = ra.to_series(), b = rb.to_series();
    auto ea = ra.expand(100), eb = rb.expand(100);
    CHECK(a.coeffs(100) == ea);
    auto h = hadamard(a, b).coeffs(100);
    for (std::size_t n = 0; n < 100; ++n) CHECK(h[n] == ea[n] * eb[n]);
    // Minimal order equals the Hankel rank.
    auto hs = hadamard(a, b);
    CHECK(hs.minimized().den().degree() <= static_cast<long>(hs.complexity()));
    CHECK(hankel_rank(hs, hs.complexity() + 3) == hs.minimized().complexity());
  }
}

TEST_CASE("Hadamard is associative and commutative") {
  std::mt19937 rng(5);
  for (int t = 0; t < 5; ++t) {
    auto a = random_recurrence(rng).to_series(), b = random_recurrence(rng).to_series(),
         c = random_recurrence(rng).to_series();
    CHECK(hadamard(a, b) == hadamard(b, a));
    CHECK(hadamard(hadamard(a, b), c).coeffs(200) == hadamard(a, hadamard(b, c)).coeffs(200));
  }
}

TEST_CASE("inverse coefficients and shifted inverses") {
  auto beta = inverse_coeffs(Polynomial::parse("1 + x"), 6);
  CHECK(beta == std::vector<Rational>{1, -1, 1, -1, 1, -1});
  // x^j f^{-1} has coefficient beta_{n-j}.
  auto shifted = RationalSeries(Polynomial::parse("x^2"), Polynomial::parse("1 + x + x^2")).coeffs(20);
  auto b = inverse_coeffs(Polynomial::parse("1 + x + x^2"), 20);
  for (std::size_t n = 2; n < 20; ++n) CHECK(shifted[n] == b[n - 2]);
}

TEST_CASE("zero sets") {
  auto z = zero_set(series("1/(1-x^2)"));
  CHECK(z.set.finite.empty());
  CHECK(z.set.period == 2);
  CHECK(z.set.start == 0);
  CHECK(z.set.residues == std::set<std::size_t>{1});
  CHECK(z.fully_certified());

  auto none = zero_set(RationalSeries::hadamard_unit());
  CHECK(none.set.empty());
  CHECK(none.fully_certified());

  auto fin = zero_set(series("x^3/(1-x)"));
  CHECK(fin.set.finite == std::set<std::size_t>{0, 1, 2});
  CHECK(fin.set.residues.empty());
  CHECK(fin.fully_certified());

  // Coefficients 0,1,0,1,1,0,1,1,0,...
  auto z3 = zero_set(series("(x + x^3)/(1-x^3)"));
  for (std::size_t n = 0; n < 60; ++n) CHECK(z3.set.contains(n) == (n % 3 == 2 || n == 0));

  CHECK_THROWS_AS(zero_set(series("1/(1-x^5)"), 3), PeriodBoundExceeded);
}

TEST_CASE("support idempotents") {
  auto a = series("1/(1-x^2)");
  auto e = support_idempotent(a);
  CHECK(e == series("x/(1-x^2)"));
  CHECK(hadamard(e, e) == e);
  CHECK(hadamard(e, a).is_zero());
  CHECK(support_idempotent(RationalSeries::hadamard_unit()).is_zero());
  CHECK(support_idempotent(series("x^3/(1-x)")) == series("1 + x + x^2"));
  auto b = series("(x + x^3)/(1-x^3)");
  auto eb = support_idempotent(b);
  CHECK(hadamard(eb, eb) == eb);
  CHECK(hadamard(eb, b).is_zero());
}

TEST_CASE("quotient ring and quasi-inverses") {
  auto u = RationalSeries::hadamard_unit();
  auto g = QFraction::from_series(series("1/(1-x^2)"));
  CHECK(q_equal(q_quasi_inverse(g), g));

  auto p = QFraction::from_series(series("1/(1-2x)"));
  auto pinv = q_quasi_inverse(p);
  CHECK(q_equal(pinv, QFraction::from_series(series("1/(1-x/2)"))));
  for (std::size_t n = 0; n < 100; ++n) CHECK(pinv.coeff(n) == Rational::pow2(-static_cast<long>(n)));

  std::vector<const char*> samples{"1/(1-x^2)", "x^3/(1-x)", "(x + x^3)/(1-x^3)", "1 - x + 3x^4",
                                   "1/(1-2x)", "(2-x)/(1-x-x^2)", "x/(1+x^2)", "1/((1-x)(1+2x))"};
  for (const char* t : samples) {
    auto a = QFraction::from_series(series(t));
    auto ai = q_quasi_inverse(a);
    CHECK(q_equal(a * ai * a, a));
    CHECK(q_equal(ai * a * ai, ai));
  }
  CHECK_THROWS_AS(QFraction(u, series("1/(1-x^2)")), std::invalid_argument);
}
