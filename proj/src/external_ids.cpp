#include "mathkg/external_ids.hpp"

#include <stdexcept>

#include "mathkg/embedded_data.hpp"
#include "mathkg/tsv.hpp"

namespace mathkg {

std::string_view to_string(IdKind k) {
  return k == IdKind::extrinsic ? "extrinsic" : "intrinsic-name";
}

bool ExternalIdType::matches(std::string_view value) const {
  return std::regex_match(value.begin(), value.end(), re_);
}

std::string ExternalIdType::url_for(std::string_view value) const {
  std::string out = url_template;
  auto pos = out.find("$1");
  if (pos != std::string::npos) out.replace(pos, 2, value);
  return out;
}

ExternalIdRegistry ExternalIdRegistry::from_tsv(std::string_view text) {
  ExternalIdRegistry reg;
  for (const auto& line : tsv::parse(text)) {
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("external id registry line " + std::to_string(line.number) + ": " +
                               what);
    };
    if (line.fields.size() != 4) fail("expected 4 columns");
    ExternalIdType t;
    t.name = line.fields[0];
    if (line.fields[1] == "extrinsic")
      t.kind = IdKind::extrinsic;
    else if (line.fields[1] == "intrinsic-name")
      t.kind = IdKind::intrinsic_name;
    else
      fail("unknown kind '" + line.fields[1] + "'");
    t.value_pattern = line.fields[2];
    t.url_template = line.fields[3];
    try {
      t.re_ = std::regex(t.value_pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      fail("bad pattern for " + t.name + ": " + e.what());
    }
    std::string key = t.name;
    if (!reg.types_.emplace(std::move(key), std::move(t)).second)
      fail("duplicate type '" + line.fields[0] + "'");
  }
  return reg;
}

ExternalIdRegistry ExternalIdRegistry::load(const std::string& path) {
  return from_tsv(tsv::read_file(path));
}

const ExternalIdType* ExternalIdRegistry::find(std::string_view name) const {
  auto it = types_.find(name);
  return it == types_.end() ? nullptr : &it->second;
}

std::vector<const ExternalIdType*> ExternalIdRegistry::entries() const {
  std::vector<const ExternalIdType*> out;
  for (const auto& [_, t] : types_) out.push_back(&t);
  return out;
}

const ExternalIdRegistry& default_external_ids() {
  static const ExternalIdRegistry reg = ExternalIdRegistry::from_tsv(embedded::external_ids_tsv);
  return reg;
}

}  // namespace mathkg
