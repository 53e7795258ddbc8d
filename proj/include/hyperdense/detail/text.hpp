#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace hyperdense::detail {

// Shortest round-trip decimal form; keeps emitted files byte-deterministic.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace hyperdense::detail
