#pragma once

#include <string>

namespace epodetect {

/// Shortest decimal text that parses back to exactly `value`.
/// Locale-independent; used for every machine-readable output.
std::string format_double(double value);

/// Fixed-point rendering for human-readable tables.
std::string format_fixed(double value, int decimals);

}  // namespace epodetect
