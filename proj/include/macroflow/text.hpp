#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace macroflow::text {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Fixed-point with `digits` decimals, for human-readable reports.
std::string format_fixed(double value, int digits);

std::optional<double> parse_double(std::string_view s);
std::optional<std::uint64_t> parse_u64(std::string_view s);
std::optional<bool> parse_bool(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace macroflow::text
