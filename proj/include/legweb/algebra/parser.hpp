#pragma once

#include <string_view>

#include "legweb/algebra/poly.hpp"

namespace legweb::algebra {

// Grammar (whitespace ignored):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*      // '/' only by constants
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | variable | 'i' | '(' expr ')'
// Variables are x y p q (u v are accepted for chart coordinates).
// Throws ParseError with line 1 and the 1-based column of the offending character.
Poly parse_poly(std::string_view text);

}  // namespace legweb::algebra
