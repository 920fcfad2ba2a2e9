#pragma once

#include <cstdio>
#include <string>

namespace drom::detail {

/// Shortest-ish lossless decimal form; %.17g round-trips doubles exactly.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace drom::detail
