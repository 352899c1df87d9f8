#include <doctest.h>

#include "fimalg/expression_parser.hpp"

using namespace fimalg;

namespace {

using E = ClosureExpr;

// Printed forms; each must read back to a tree that prints identically.
const char* const kCorpus[] = {
    "s",
    "adj(s)",
    "0",
    "1/2",
    "-3",
    "-(3)",
    "-s",
    "--s",
    "--3",
    "s + adj(s)",
    "s - adj(s)",
    "s * adj(s)",
    "1 - s * adj(s)",
    "1 - adj(s) * s",
    "(1 - s * adj(s)) * inv(1 - adj(s)) * (1 - adj(s) * s) * inv(1 - s) * (1 - s * adj(s))",
    "(1 - adj(s) * s) * inv(1 - s) * (1 - s * adj(s)) * inv(1 - adj(s)) * (1 - adj(s) * s)",
    "psi(1/(1-x^2)) * (1 - adj(s) * s) * s",
    "psi(x/(1-x^2)) * (1 - adj(s) * s) * s * adj(s)",
    "psi(1/(1-x))",
    "psi(1/(1-2x)) * psi(1/(1+x))",
    "inv(1 + s)",
    "inv(1 - s * s)",
    "inv(1 - 2 * s + s * s)",
    "adj(inv(1 - s))",
    "inv(adj(1 - s))",
    "adj(adj(s))",
    "s * s * s",
    "s * (s * s)",
    "(s + 1) * (s - 1)",
    "s - (s - 1)",
    "s - (1 + s)",
    "s + (1 + s)",
    "-(s + 1)",
    "-(s * s)",
    "-adj(s)",
    "s * -3",
    "s - -3",
    "s * -s",
    "3/4 * s + -1/4 * adj(s)",
    "1 - inv(1 - s) * (1 - s)",
    "(inv(1 - s) - 1) * adj(s)",
    "adj(s) * adj(s) * s * s",
    "s * adj(s) * s",
    "adj(s) * s * adj(s)",
    "psi(1/(1-x^3)) * s * (1 - adj(s) * s) * adj(s)",
    "psi(1 + x) - psi(1 + x)",
    "-psi(1/(1-x))",
    "inv(inv(1 - s))",
    "(1 + s) * inv(1 + s)",
    "adj(s * (1 - adj(s) * s))",
};

}  // namespace

TEST_CASE("round trip on the corpus") {
  CHECK(sizeof(kCorpus) / sizeof(kCorpus[0]) == 50);
  for (const char* text : kCorpus) {
    INFO(text);
    E e = parse_expression(text);
    CHECK(e.str() == text);
    CHECK(parse_expression(e.str()) == e);
  }
}

TEST_CASE("trees") {
  CHECK(parse_expression("s + adj(s)") == E::s() + E::s_star());
  CHECK(parse_expression("1 - 2 - 3") == (E::scalar(1) - E::scalar(2)) - E::scalar(3));
  CHECK(parse_expression("s + s * s") == E::s() + E::s() * E::s());
  CHECK(parse_expression("-3") == E::scalar(Rational(-3)));
  CHECK(parse_expression("-(3)") == -E::scalar(Rational(3)));
  CHECK(parse_expression("  7/14 ") == E::scalar(Rational(1, 2)));
  CHECK(parse_expression("psi( 1/(1-x^2) )").psi_label() == "1/(1-x^2)");
}

TEST_CASE("s* sugar") {
  CHECK(parse_expression("s*") == E::s_star());
  CHECK(parse_expression("s* + 1") == E::s_star() + E::scalar(1));
  CHECK(parse_expression("s*-1") == E::s_star() - E::scalar(1));
  CHECK(parse_expression("s*s") == E::s() * E::s());
  CHECK(parse_expression("s**s") == E::s_star() * E::s());
  CHECK(parse_expression("(s*)") == E::s_star());
  CHECK(parse_expression("s*adj(s)") == E::s() * E::s_star());
  CHECK(parse_expression("s * -1") == E::s() * E::scalar(Rational(-1)));
}

TEST_CASE("errors carry positions") {
  auto pos = [](const char* text) {
    try {
      (void)parse_expression(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position);
    }
    return -1L;
  };
  CHECK(pos("s +") == 3);
  CHECK(pos("foo(s)") == 0);
  CHECK(pos("s + bar") == 4);
  CHECK(pos("adj(s, s)") == 5);
  CHECK(pos("inv s") == 4);
  CHECK(pos("(s + 1") == 6);
  CHECK(pos("s )") == 2);
  CHECK(pos("psi(1/(1-x)") == 4);
  CHECK(pos("psi()") == 4);
  CHECK(pos("psi(1/x)") == 4);
  CHECK(pos("psi(1/(1-y))") == 4);
  CHECK(pos("1/") == 2);
  CHECK(pos("") == 0);
  CHECK_THROWS_WITH_AS(parse_expression("foo"), "unknown identifier 'foo' at position 0", ParseError);
}
