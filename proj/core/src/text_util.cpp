#include "osample/text_util.hpp"

#include <charconv>
#include <cmath>

#include "osample/errors.hpp"

namespace osample::text {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_double(std::string_view s, std::string_view what) {
    const std::string t = trim(s);
    double v = 0.0;
    const char* first = t.data();
    if (!t.empty() && t.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        if (t == "nan" || t == "NaN") return std::nan("");
        throw ConfigError("invalid number for " + std::string(what) + ": '" + t + "'");
    }
    return v;
}

long parse_long(std::string_view s, std::string_view what) {
    const std::string t = trim(s);
    long v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError("invalid integer for " + std::string(what) + ": '" + t + "'");
    }
    return v;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace osample::text
