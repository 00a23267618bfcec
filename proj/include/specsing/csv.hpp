#pragma once

#include <cstdio>
#include <string>

namespace specsing {

/// Twelve significant digits, "-0" folded to "0".
inline std::string format_g12(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace specsing
