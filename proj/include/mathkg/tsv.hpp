#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mathkg::tsv {

struct Line {
  std::size_t number;  // 1-based
  std::vector<std::string> fields;
};

// Splits UTF-8 text into tab-separated records, skipping blank lines and
// lines whose first character is '#'. A trailing '\r' is stripped.
std::vector<Line> parse(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace mathkg::tsv
