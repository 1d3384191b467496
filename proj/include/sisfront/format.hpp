#pragma once

#include <string>

namespace sisfront {

/// Shortest round-trip-safe text for a double: 17 significant digits,
/// locale independent.
std::string format_double(double v);

}  // namespace sisfront
