#pragma once

#include <string_view>

// Default data tables compiled into the library from data/*.tsv.
namespace mathkg::embedded {
extern const std::string_view commands_tsv;
extern const std::string_view macros_tsv;
extern const std::string_view external_ids_tsv;
extern const std::string_view property_map_tsv;
}  // namespace mathkg::embedded
