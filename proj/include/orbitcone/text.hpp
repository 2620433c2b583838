#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace orbitcone::text {

/// Removes all whitespace.
std::string strip(std::string_view s);
/// Splits on commas that are not nested inside () or [].
std::vector<std::string> split_top_level(const std::string& s);
/// Whole-string integer; throws ParseError mentioning `context`.
int parse_int(const std::string& s, std::string_view context);

}  // namespace orbitcone::text
