#pragma once

// Locale-independent numeric formatting/parsing (std::to_chars / from_chars).
// CSV columns use 17 significant digits so every double round-trips exactly.

#include <charconv>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace motwave {

inline std::string format_sig17(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

// Shortest representation that parses back to the same double.
inline std::string format_shortest(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto r = std::from_chars(begin, end, v);
  if (r.ec != std::errc{} || r.ptr != end) return std::nullopt;
  return v;
}

inline std::optional<long long> parse_int(std::string_view s) {
  long long v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace motwave
