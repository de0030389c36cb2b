#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace slrscreen {

std::string trim(std::string_view s);

// ASCII-only case fold; bytes outside [A-Z] pass through untouched.
std::string ascii_lower(std::string_view s);

// Trims and squeezes every interior whitespace run down to a single space.
std::string collapse_whitespace(std::string_view s);

bool is_blank(std::string_view s);

bool equals_ci(std::string_view a, std::string_view b);

bool starts_with_ci(std::string_view s, std::string_view prefix);

bool contains_ci(std::string_view haystack, std::string_view needle);

// Whole-string integer parse after trimming; rejects trailing junk.
std::optional<int> parse_int(std::string_view s);

}  // namespace slrscreen
