#pragma once

#include <cstdio>
#include <string>

namespace pvg {

/// Round-trip text form of a double: 17 significant digits.
[[nodiscard]] inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace pvg
