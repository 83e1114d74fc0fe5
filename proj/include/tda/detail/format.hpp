#pragma once

#include <charconv>
#include <string>

namespace tda::detail {

/// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace tda::detail
