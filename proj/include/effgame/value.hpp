#pragma once

#include <concepts>
#include <string>

namespace effgame {

// Text rendering of variable values, used by error messages and dumps.
inline std::string format_value(const std::string& s) { return s; }

template <std::integral T>
std::string format_value(T v) {
  return std::to_string(v);
}

}  // namespace effgame
