#pragma once

#include <cstdio>
#include <string>

namespace casimir {

/// Fixed CSV number format: scientific notation, 9 significant digits.
inline std::string format_sci(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.8e", value);
  return buffer;
}

/// 17 significant digits, enough to read back the same double.
inline std::string format_exact(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

} // namespace casimir
