#pragma once

// ASCII surface syntax.
//
//   formula := iff
//   iff     := imp ('<->' imp)*              left-associative
//   imp     := or ('->' imp)?                right-associative
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '~' unary | '<>' unary | '[]' unary
//            | ('E' | 'A') var '.' formula   body extends as far right as possible
//            | atom
//   atom    := var | 'true' | 'false' | '(' formula ')'
//   var     := 'p' digits | identifier
//
// `p<digits>` names the variable with that index. Other identifiers are
// assigned, in order of first appearance, the least indices not written
// explicitly anywhere in the text.

#include <string>
#include <string_view>

#include "pqml/formula.hpp"

namespace pqml {

/// Throws SyntaxError on malformed input.
Formula parse(std::string_view text);

/// Prints with the sugar re-applied where the primitive pattern matches;
/// parse(print(f)) == f for every formula.
std::string print(const Formula& f);

}  // namespace pqml
