#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mf2scf::text {

// Shortest decimal form that parses back to the identical double.
[[nodiscard]] std::string format_double(double value);
[[nodiscard]] double parse_double(std::string_view token);
[[nodiscard]] long long parse_int(std::string_view token);

// Values joined by a single separator character.
[[nodiscard]] std::string join(std::span<const double> values, char sep = ' ');
[[nodiscard]] std::vector<double> parse_doubles(std::string_view line, char sep = ' ');

[[nodiscard]] std::vector<std::string_view> split(std::string_view line, char sep);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
[[nodiscard]] std::string fnv1a_hex(std::string_view data);

}  // namespace mf2scf::text
