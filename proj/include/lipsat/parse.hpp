#ifndef LIPSAT_PARSE_HPP
#define LIPSAT_PARSE_HPP

#include <string>

#include "lipsat/poly.hpp"

namespace lipsat {

// Parses the polynomial text grammar used by the CLI:
//   3/2*x^2*y + (z5)*y^4 - x'*y
// where (zN) is the primitive N-th root of unity, variables are identifiers
// with optional primes, and +, -, *, ^, parentheses have the usual meaning.
// ParseError messages name the offending position.
Poly parse_poly(const std::string& text);

// Constant expressions (no variables), e.g. "(z5)^3*1/2+1".
CycRat parse_cycrat(const std::string& text);

} // namespace lipsat

#endif
