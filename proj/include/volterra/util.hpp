#pragma once

#include <string>
#include <string_view>

namespace volterra {

/// Shortest round-trip decimal form ("1", "0.5", "1e-16").
std::string format_number(double x);

/// Strict parse of a finite decimal number; throws std::invalid_argument.
double parse_number(std::string_view text, std::string_view what);

}  // namespace volterra
