#pragma once

#include <cstdint>
#include <string>

namespace icsrisk {

/// Half-up rounding to two decimals, returned as integer hundredths.
/// All display-rounded quantities flow through this so that downstream
/// arithmetic (means, comparisons) can stay exact.
std::int64_t to_display_cents(double x);

/// Half-up rounding of num/den (both > 0) to the nearest integer.
std::int64_t half_up_div(std::int64_t num, std::int64_t den);

/// The two-decimal display value of x as a double (cents / 100).
double display2(double x);

std::string format_cents(std::int64_t cents);   // 477 -> "4.77"
std::string format2(double x);                  // display-rounded, 2 decimals
std::string format1(double x);                  // one decimal (base scores)

} // namespace icsrisk
