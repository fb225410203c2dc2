#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace osample::text {

[[nodiscard]] std::string trim(std::string_view s);
/// Splits on sep, trimming each piece; nested parentheses protect separators.
[[nodiscard]] std::vector<std::string> split_top_level(std::string_view s, char sep);
/// @throws ConfigError naming `what` when s is not a complete number
[[nodiscard]] double parse_double(std::string_view s, std::string_view what);
[[nodiscard]] long parse_long(std::string_view s, std::string_view what);
/// Shortest text that reads back to the same double.
[[nodiscard]] std::string format_double(double v);

}  // namespace osample::text
