#include "cmarket/csv.hpp"

#include "cmarket/model.hpp"

#include <cmath>
#include <charconv>
#include <cstdlib>

namespace cmarket {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string format_number(std::uint64_t value) {
    return std::to_string(value);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    const std::string owned(text);
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (owned.empty() || end != owned.c_str() + owned.size())
        throw ConfigError("not a number: '" + owned + "'");
    if (!std::isfinite(value)) throw ConfigError("non-finite number: '" + owned + "'");
    return value;
}

} // namespace cmarket
