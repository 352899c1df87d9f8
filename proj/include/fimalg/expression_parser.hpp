#pragma once

// Surface syntax for closure expressions:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom
//   atom   := 's' | rational | '(' expr ')' | 'adj(' expr ')' | 'inv(' expr ')'
//           | 'psi(' series ')'
// "s*" (no space before the star) stands for adj(s) unless a factor other
// than a negation follows, so "s*s" is s times s and "s* + 1" is adj(s) + 1.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fimalg/closure_calculus.hpp"
#include "fimalg/semigroup_algebra.hpp"

namespace fimalg {

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Throws ParseError.
ClosureExpr parse_expression(std::string_view text);

/// The element of A named by an expression without inv or psi; throws
/// std::invalid_argument otherwise.
AlgebraElem to_algebra_elem(const ClosureExpr& e);

}  // namespace fimalg
