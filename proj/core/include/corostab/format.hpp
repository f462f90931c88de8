#pragma once

#include <string>

namespace corostab {

/// Shortest decimal representation that parses back to the same double
/// (never more than 17 significant digits). "inf", "-inf" and "nan" for
/// non-finite values.
std::string format_number(double value);

}  // namespace corostab
