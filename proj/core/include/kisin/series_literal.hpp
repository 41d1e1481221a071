#pragma once

#include <string>

#include "kisin/series.hpp"

namespace kisin {

// Grammar: sums/differences of products of factors, factors being integers
// (reduced mod p), the generator a (f > 1 only), u, or parenthesized
// expressions, each optionally raised to an integer power with ^.  The
// multiplication sign may be omitted.  A term O(u^N) sets the precision.
// Examples: "1 + 2*u^3", "a*u + a^2*u^4", "u^-1 + (1 + a)u^2 + O(u^10)".
USeries parse_series(const std::string& text, const FieldPtr& k);

// Canonical text; parse_series(format_series(x)) == x.
inline std::string format_series(const USeries& x) { return x.to_string(); }

}  // namespace kisin
