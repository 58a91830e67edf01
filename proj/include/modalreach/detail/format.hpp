#ifndef MODALREACH_DETAIL_FORMAT_HPP_
#define MODALREACH_DETAIL_FORMAT_HPP_

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

namespace modalreach::detail {

/// 17 significant digits; always round-trips a double.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Shortest representation that round-trips a double.
inline std::string fmt_shortest(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace modalreach::detail

#endif  // MODALREACH_DETAIL_FORMAT_HPP_
