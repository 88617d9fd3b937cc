#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "qlpa/element.hpp"

namespace qlpa {

/// Parse tree for Leavitt path algebra expressions.
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := [scalar] factor+ | scalar
///   factor := atom '*'*
///   atom   := IDENT | '"' quoted '"' | '(' expr ')'
///   scalar := INT ['/' INT]
///
/// IDENT is a maximal run of characters other than whitespace and +-*()/".
/// An all-digit token is a scalar when followed by '/' or by a factor, and
/// an identifier otherwise. Identifiers resolve to edges first, then
/// vertices; an all-digit token naming neither is the scalar times 1.
struct LpaExpr {
  enum class Kind { Ident, Scalar, Sum, Product, Star, Negate };
  Kind kind = Kind::Scalar;
  std::string name;                 // Ident
  mpq_class value;                  // Scalar
  std::vector<LpaExpr> children;    // Sum, Product: operands; Star, Negate: one
  std::size_t position = 0;         // source offset, for error messages
};

/// Throws ParseError with the offending position.
LpaExpr parse_expr(std::string_view text);
/// Throws UnknownId for identifiers that name nothing in q.
Element eval_expr(const LpaExpr& e, std::shared_ptr<const Quiver> q, Field f);
Element eval_expr(std::string_view text, std::shared_ptr<const Quiver> q, Field f);

/// Text that parses back to the same element: terms in monomial order, each
/// written as coefficient, the edges of p, then the edges of q reversed and
/// starred. Identifiers are quoted when they would not lex as IDENT.
std::string render(const Element& a);
std::string render_identifier(std::string_view id);

}  // namespace qlpa
