#include "mf2scf/text_format.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>

#include "mf2scf/errors.hpp"

namespace mf2scf::text {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view token) {
    double value = 0.0;
    const auto* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw FormatError("not a number: '" + std::string(token) + "'");
    }
    return value;
}

long long parse_int(std::string_view token) {
    long long value = 0;
    const auto* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw FormatError("not an integer: '" + std::string(token) + "'");
    }
    return value;
}

std::string join(std::span<const double> values, char sep) {
    std::string out;
    out.reserve(values.size() * 12);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out.push_back(sep);
        }
        out += format_double(values[i]);
    }
    return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(line.substr(start));
            break;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::vector<double> parse_doubles(std::string_view line, char sep) {
    std::vector<double> values;
    if (line.empty()) {
        return values;
    }
    for (std::string_view tok : split(line, sep)) {
        values.push_back(parse_double(tok));
    }
    return values;
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf.data(), 16);
}

}  // namespace mf2scf::text
