#pragma once

#include <charconv>
#include <cstdlib>
#include <string>
#include <system_error>

#include "strobe/errors.hpp"

// Locale-independent, deterministic numeric text conversion used by every
// serialization path (CSV, config echo, summaries, plots).

namespace strobe {

// Shortest representation that round-trips exactly to the same double.
inline std::string fmt_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Scientific notation with 17 significant digits: fixed layout, exact
// round-trip, and always more than the documented 12-significant-digit floor.
inline std::string fmt_sci17(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

// Compact human-facing value for plot labels.
inline std::string fmt_label(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

// Strict parse of a decimal/scientific double; the whole token must be
// consumed (no unit suffixes, no trailing junk).
inline double parse_double_strict(const std::string& text, const std::string& context) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size() || text.empty() || errno == ERANGE)
    throw ConfigError(context + ": cannot parse number '" + text + "'");
  return v;
}

inline long parse_long_strict(const std::string& text, const std::string& context) {
  long v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ConfigError(context + ": cannot parse integer '" + text + "'");
  return v;
}

}  // namespace strobe
