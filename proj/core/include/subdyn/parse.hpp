#pragma once

#include "subdyn/poly.hpp"

#include <string>

namespace subdyn {

// Parses the polynomial grammar shared by every interface:
//
//   poly  := term (('+'|'-') term)* ; leading '-' allowed
//   term  := coeff ('*' factor)* | factor ('*' factor)*
//   factor:= ident ('^' nat)?
//   coeff := int | int '/' int   (arbitrary-precision integers)
//
// Whitespace is insignificant. Identifiers resolve to ring variables or, for
// function fields, to field parameters. Errors carry a 0-based offset.
Polynomial parse_poly(const std::string& text, const RingPtr& ring);

} // namespace subdyn
