#pragma once

// Parser for operator expressions such as "E1*E1 + E2*E2 - 1".
//
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := ('+' | '-') factor | primary
//   primary := number ['i'] | 'i' | 'E' digits | '(' expr ')'
//
// Generators are 1-based in the text and 0-based in the result. Products
// keep the written order.

#include <string_view>

#include "nilharm/enveloping.hpp"

namespace nilharm {

/// Throws SyntaxError on malformed input and InvalidArgument when a
/// generator index exceeds `dim`.
EnvelopingElement parse_operator(std::string_view expr, std::size_t dim);

}  // namespace nilharm
