#pragma once

#include <string>
#include <utility>
#include <vector>

#include "potentsum/rational.hpp"

namespace potentsum {

// Term list for the scalar text syntax `c0 + c1*w + c2*w^2 + ...`:
// each term is (coefficient, power of w). Whitespace-insensitive; accepts
// `w`, `-w^2`, `5w`, `3/2*w^3`, and bare rationals. Powers may repeat.
std::vector<std::pair<Rational, long>> parse_power_terms(const std::string& text);

// Renders a coefficient-by-power list, skipping zero coefficients ("0" if all are).
std::string format_power_terms(const std::vector<Rational>& coeffs_by_power);

}  // namespace potentsum
