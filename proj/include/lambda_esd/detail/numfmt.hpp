#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace lambda_esd::detail {

/// Fixed significant-digit decimal (%g), for data columns with a pinned width.
inline std::string format_significant(double x, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

/// Shortest decimal that round-trips to exactly x, for human-facing labels.
inline std::string format_shortest(double x) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace lambda_esd::detail
