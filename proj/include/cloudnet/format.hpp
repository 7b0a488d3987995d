#pragma once

#include <cstdio>
#include <string>

namespace cloudnet {

// Fixed "%.12g" rendering so identical runs emit identical bytes.
inline std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace cloudnet
