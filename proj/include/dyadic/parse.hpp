#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "dyadic/quad_ext.hpp"

namespace dyadic {

/// Integer combination c0 + c1 * pi of the base uniformizer.
struct LinearCoeff {
  std::int64_t c0 = 0;
  std::int64_t c1 = 0;
};

/// Parses "z^2+<a1>z+<a2>". Coefficients are integers, "pi", "3pi" / "3*pi",
/// or a parenthesized signed sum of those. Returns (a1, a2).
std::pair<LinearCoeff, LinearCoeff> parse_monic_quadratic(const std::string& text);

EisensteinPoly parse_poly(const std::string& text, const BaseField& base);

/// "q2", or "q2-ram" with the defining polynomial of the m = 2 base.
BaseField parse_base(const std::string& name, const std::string& step);

}  // namespace dyadic
