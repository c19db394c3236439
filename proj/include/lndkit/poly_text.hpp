#pragma once

#include <string>
#include <string_view>

#include "lndkit/mpoly.hpp"

namespace lndkit {

// Grammar: sums/differences of products of factors; a factor is a rational
// literal, a declared variable, the uniformizer `x`, or a parenthesized
// expression, optionally raised with `^` to a non-negative integer.  `/` is
// allowed when the divisor is a unit of A (e.g. `y/2`, `(1+x)/(1-x)`).
Poly parse_poly(std::string_view text, const VarList& vars);
// Same grammar without the uniformizer.
RPoly parse_rpoly(std::string_view text, const VarList& vars);

std::string format(const Poly& p);
std::string format(const RPoly& p);
std::string format(const BaseElem& a);

}  // namespace lndkit
