#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace citespectro::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);  // ASCII only; other bytes pass through
std::string collapse_whitespace(std::string_view s);

// Splits on every occurrence of `sep`. Empty pieces are kept.
std::vector<std::string_view> split(std::string_view s, std::string_view sep);

// Lowercase, commas to spaces, collapsed whitespace, trailing periods
// stripped. "Sambrook J." and "sambrook j" normalize to the same string.
std::string normalize_name(std::string_view s);

// Lowercase and collapsed whitespace.
std::string normalize_title(std::string_view s);

// Parses a base-10 integer that spans the whole (trimmed) input.
std::optional<long long> parse_int(std::string_view s);

// Replaces each invalid UTF-8 sequence with U+FFFD. Sets `replaced` when
// anything changed.
std::string sanitize_utf8(std::string_view s, bool& replaced);

}  // namespace citespectro::text
