#pragma once

#include <string>

#include "wb/exact/number_theory.hpp"

namespace wb {

/// "3", "-2", "5/7".
std::string rational_to_string(const Rational& r);

/// Parses "12", "-3", "4/6" (canonicalized). Throws ParseError.
Rational parse_rational(const std::string& s);

/// Appends coef*mono to a +/- joined sum. Unit coefficients are dropped
/// in front of a nonempty monomial; mono == "" means a constant term.
void append_term(std::string& out, const Rational& coef, const std::string& mono);

} // namespace wb
