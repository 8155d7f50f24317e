#pragma once

#include <charconv>
#include <string>

namespace spnav::detail {

/// Shortest decimal that round-trips; "inf"/"-inf"/"nan" for non-finite values.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace spnav::detail
