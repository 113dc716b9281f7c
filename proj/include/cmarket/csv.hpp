#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cmarket {

/// Shortest text that parses back to exactly the same double (at most 17
/// significant digits). NaN prints as "nan".
std::string format_number(double value);

std::string format_number(std::uint64_t value);

/// Strict parse of a whole cell; throws ConfigError on trailing junk or non-finite values.
double parse_double(std::string_view text);

} // namespace cmarket
