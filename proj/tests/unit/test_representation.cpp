#include <doctest.h>

#include <random>

#include "fimalg/rational_series.hpp"
#include "fimalg/representation.hpp"

using namespace fimalg;

namespace {

const AlgebraElem s = AlgebraElem::s();
const AlgebraElem S = AlgebraElem::s_star();
const AlgebraElem one = AlgebraElem::one();

// Image of a word by multiplying shift matrices letter by letter.
ExactMatrix word_matrix(const std::string& w, long n) {
  ExactMatrix m = ExactMatrix::identity(static_cast<std::size_t>(n + 1));
  for (char c : w) m = m * (c == 's' ? lower_shift(static_cast<std::size_t>(n + 1)) : upper_shift(static_cast<std::size_t>(n + 1)));
  return m;
}

AlgebraElem random_elem(std::mt19937& rng) {
  std::uniform_int_distribution<long> lo(-3, 0), hi(0, 3), c(-3, 3);
  AlgebraElem a;
  for (int t = 0; t < 3; ++t) {
    long l = lo(rng), h = hi(rng);
    std::uniform_int_distribution<long> e(l, h);
    a += AlgebraElem(MunnTriple{l, h, e(rng)}, Rational(c(rng)));
  }
  return a;
}

}  // namespace

TEST_CASE("images of s and monomials") {
  auto r = represent(s, 2);
  CHECK(r.component(0) == ExactMatrix(1, 1));
  CHECK(r.component(1) == ExactMatrix::unit(2, 2, 1));
  CHECK(r.component(2) == ExactMatrix::unit(3, 2, 1) + ExactMatrix::unit(3, 3, 2));
  CHECK(represent(one, 5) == TruncatedRep::identity(5));
  for (long lo = -3; lo <= 0; ++lo)
    for (long hi = 0; hi <= 3; ++hi)
      for (long e = lo; e <= hi; ++e) {
        MunnTriple t{lo, hi, e};
        for (long n = 0; n <= 6; ++n) CHECK(monomial_component(t, n) == word_matrix(to_word(t), n));
      }
}

TEST_CASE("q_{-i,j} goes to a diagonal unit in component i+j") {
  for (long i = 0; i <= 3; ++i)
    for (long j = 0; j <= 3; ++j) {
      auto r = represent(q_proj(i, j), 8);
      for (long n = 0; n <= 8; ++n) {
        if (n == i + j)
          CHECK(r.component(n) == ExactMatrix::unit(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i + 1)));
        else
          CHECK(r.component(n).is_zero());
      }
    }
}

TEST_CASE("represent is a homomorphism") {
  std::mt19937 rng(77);
  for (int t = 0; t < 50; ++t) {
    AlgebraElem a = random_elem(rng), b = random_elem(rng);
    CHECK(represent(a * b, 12) == represent(a, 12) * represent(b, 12));
    CHECK(represent(a.star(), 12) == represent(a, 12).adjoint());
  }
}

TEST_CASE("rank sequences") {
  auto ranks = rank_sequence(represent(s + S, 40));
  for (long n = 0; n <= 40; ++n) CHECK(ranks[static_cast<std::size_t>(n)] == static_cast<std::size_t>(n + 1 - (n % 2 == 0 ? 1 : 0)));
  auto r2 = rank_sequence(represent(one - s * S, 10));
  for (auto v : r2) CHECK(v == 1);
  for (auto v : rank_sequence(represent(AlgebraElem(), 10))) CHECK(v == 0);
}

TEST_CASE("weights and tails") {
  for (long T = 0; T <= 20; ++T) {
    Rational partial(0);
    for (long n = 0; n <= T; ++n) partial += Rational(n + 1) * component_weight(n);
    CHECK(partial + rank_tail(T) == Rational(1));
  }
}

TEST_CASE("von Neumann rank") {
  auto r = vn_rank(represent(s + S, 64));
  REQUIRE(r.exact.has_value());
  CHECK(*r.exact == Rational(2, 3));
  CHECK(r.encloses(Rational(2, 3)));
  CHECK(vn_rank(TruncatedRep::identity(20)).exact == Rational(1));
  for (long i = 0; i <= 3; ++i)
    for (long j = 0; j <= 3; ++j) {
      auto q = vn_rank(represent(q_proj(i, j), 16));
      REQUIRE(q.exact.has_value());
      CHECK(*q.exact == Rational::pow2(-(i + j + 2)));
    }
  auto ss = vn_rank(represent(S * s, 32));
  CHECK(ss.exact == Rational(1, 2));
  auto zero = vn_rank(TruncatedRep::zero(4));
  CHECK(zero.exact == Rational(0));
}

TEST_CASE("idempotent and complement ranks enclose 1") {
  std::vector<AlgebraElem> idem{s * S, S * s, q_proj(1, 2), h_proj(3), pow(s, 2) * pow(S, 2)};
  for (const auto& p : idem) {
    auto a = vn_rank(represent(p, 24)), b = vn_rank(represent(one - p, 24));
    CHECK(a.lower() + b.lower() <= Rational(1));
    CHECK(Rational(1) <= a.upper() + b.upper());
    REQUIRE(a.exact.has_value());
    CHECK(a.exact->is_dyadic());
  }
}

TEST_CASE("localization inverses") {
  CHECK(localize_inverse(Polynomial(1), 5) == TruncatedRep::identity(5));
  auto g = localize_inverse(Polynomial::parse("1 - x"), 6);
  for (long n = 0; n <= 6; ++n)
    for (long i = 0; i <= n; ++i)
      for (long j = 0; j <= n; ++j)
        CHECK(g.component(n).at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) == Rational(i >= j ? 1 : 0));
  auto e = represent(one - s * S, 8);
  CHECK(e * localize_inverse(Polynomial::parse("1 + x"), 8) == e);

  // Column 1 of the inverse carries the power-series coefficients of 1/f.
  Polynomial f = Polynomial::parse("1 - 2x + 3x^3");
  auto inv = localize_inverse(f, 12);
  auto beta = inverse_coeffs(f, 13);
  for (long l = 0; l <= 12; ++l) CHECK(inv.component(12).at(static_cast<std::size_t>(l), 0) == beta[static_cast<std::size_t>(l)]);
  auto adj = adjoint_inverse(f, 12);
  CHECK(adj * represent(eval_poly(f, s), 12).adjoint() == TruncatedRep::identity(12));
}

TEST_CASE("inverse formula for adjoint inverses") {
  for (const char* t : {"1 + x", "1 + x + x^2", "1 - 3x + 2x^2 - x^3", "1 + x/2 - x^4"}) {
    Polynomial f = Polynomial::parse(t);
    auto rep = verify_inverse_formula(f, 16);
    CHECK(rep.ok);
    CHECK(rep.least_from <= f.degree());
  }
  CHECK_THROWS(verify_inverse_formula(Polynomial(1), 8));
  auto polys = inverse_formula_polys(Polynomial::parse("1 + 2x + 3x^2"));
  REQUIRE(polys.size() == 2);
  CHECK(polys[0] == Polynomial::parse("-3"));
  CHECK(polys[1] == Polynomial::parse("-3x - 2"));
}

TEST_CASE("single-entry components of b_{i,k,f}") {
  CHECK(basis_independence_probe(0, 0, 0, Polynomial::parse("1 - x"), 12).ok);
  CHECK(basis_independence_probe(1, 0, 1, Polynomial::parse("1 + x"), 12).ok);
  CHECK(basis_independence_probe(2, 1, 3, Polynomial(1), 12).ok);
  CHECK(basis_independence_probe(1, 2, 2, Polynomial::parse("1 - x + 2x^2"), 12).ok);
}

TEST_CASE("matrices over A are represented blockwise") {
  auto r = represent_matrix({{s, one}, {AlgebraElem(), S}}, 5);
  CHECK(r.d() == 2);
  CHECK(r.component(3).rows() == 8);
  auto rk = vn_rank(represent_matrix({{one, AlgebraElem()}, {AlgebraElem(), one}}, 10));
  CHECK(rk.exact == Rational(2));
}
