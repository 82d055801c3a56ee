// Locale-independent number formatting for CSV and text output.
#pragma once

#include <string>

namespace gyrosim {

/// Scientific notation with `digits` digits after the point and a bare
/// exponent: 500.0 -> "5.000000e2", 1.5e-7 -> "1.500000e-7".
std::string format_sci(double value, int digits = 6);

/// 17 significant digits; parses back to the identical double.
std::string format_sci_full(double value);

} // namespace gyrosim
