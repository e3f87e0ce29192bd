// Registry of external identifier types (DOI, ORCID iD, CRAN Project, ...).

#pragma once

#include <map>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace mathkg {

enum class IdKind { extrinsic, intrinsic_name };

std::string_view to_string(IdKind k);

struct ExternalIdType {
  std::string name;
  IdKind kind = IdKind::extrinsic;
  std::string value_pattern;
  std::string url_template;  // "$1" is replaced by the value

  bool matches(std::string_view value) const;
  std::string url_for(std::string_view value) const;

 private:
  friend class ExternalIdRegistry;
  std::regex re_;
};

class ExternalIdRegistry {
 public:
  // TSV: name, kind, pattern, url_template. Throws std::runtime_error on
  // malformed rows, bad regexes or duplicate names.
  static ExternalIdRegistry from_tsv(std::string_view text);
  static ExternalIdRegistry load(const std::string& path);

  const ExternalIdType* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::size_t size() const { return types_.size(); }
  std::vector<const ExternalIdType*> entries() const;

 private:
  std::map<std::string, ExternalIdType, std::less<>> types_;
};

const ExternalIdRegistry& default_external_ids();

}  // namespace mathkg
