#include "icsrisk/rounding.hpp"

#include <cmath>
#include <cstdio>

namespace icsrisk {

std::int64_t to_display_cents(double x) {
    // Half-up for non-negative values; llround ties away from zero, which
    // coincides with half-up on the values this library produces (all >= 0).
    return std::llround(x * 100.0);
}

std::int64_t half_up_div(std::int64_t num, std::int64_t den) {
    return (2 * num + den) / (2 * den);
}

double display2(double x) {
    return static_cast<double>(to_display_cents(x)) / 100.0;
}

std::string format_cents(std::int64_t cents) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%02lld", static_cast<long long>(cents / 100),
                  static_cast<long long>(cents % 100));
    return buf;
}

std::string format2(double x) {
    return format_cents(to_display_cents(x));
}

std::string format1(double x) {
    const auto tenths = std::llround(x * 10.0);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%lld", static_cast<long long>(tenths / 10),
                  static_cast<long long>(tenths % 10));
    return buf;
}

} // namespace icsrisk
