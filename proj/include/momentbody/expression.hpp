#pragma once

#include <functional>
#include <string>

namespace momentbody {

// Parses a one-variable expression into a callable: numbers, x, + - * /,
// ^ with integer exponent, sqrt(...), abs(...), |...| and parentheses.
// Example: "-5*sqrt(abs(x-0.5))".
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace momentbody
