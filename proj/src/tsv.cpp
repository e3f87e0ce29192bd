#include "mathkg/tsv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mathkg::tsv {

std::vector<Line> parse(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    Line rec{number, {}};
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        rec.fields.emplace_back(line.substr(start));
        break;
      }
      rec.fields.emplace_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    out.push_back(std::move(rec));
    if (end == text.size()) break;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mathkg::tsv
