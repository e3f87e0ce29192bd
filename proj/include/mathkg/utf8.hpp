#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace mathkg::utf8 {

void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);

// Byte offset of the first malformed sequence, or nullopt if valid.
std::optional<std::size_t> first_invalid(std::string_view s);

// Length of the (valid) sequence starting at s[pos]; 1 for stray bytes.
std::size_t sequence_length(std::string_view s, std::size_t pos);

}  // namespace mathkg::utf8
