#include "mathkg/registry.hpp"

#include <charconv>

#include "mathkg/embedded_data.hpp"
#include "mathkg/tsv.hpp"

namespace mathkg {

namespace {

constexpr std::pair<OutputClass, std::string_view> kClassNames[] = {
    {OutputClass::identifier, "identifier"}, {OutputClass::op, "operator"},
    {OutputClass::layout, "layout"},         {OutputClass::accent, "accent"},
    {OutputClass::text, "text"},             {OutputClass::space, "space"},
};

}  // namespace

std::string_view to_string(OutputClass c) {
  for (const auto& [cls, name] : kClassNames)
    if (cls == c) return name;
  return "?";
}

std::optional<OutputClass> output_class_from_string(std::string_view s) {
  for (const auto& [cls, name] : kClassNames)
    if (name == s) return cls;
  return std::nullopt;
}

CommandRegistry CommandRegistry::from_tsv(std::string_view text) {
  CommandRegistry reg;
  for (const auto& line : tsv::parse(text)) {
    auto fail = [&](const std::string& what) {
      throw RegistryError("registry line " + std::to_string(line.number) + ": " + what);
    };
    if (line.fields.size() < 3 || line.fields.size() > 4) fail("expected 3 or 4 columns");
    CommandInfo info;
    info.name = line.fields[0];
    if (info.name.empty()) fail("empty name");
    const std::string& arity = line.fields[1];
    auto [p, ec] = std::from_chars(arity.data(), arity.data() + arity.size(), info.arity);
    if (ec != std::errc() || p != arity.data() + arity.size() || info.arity < 0)
      fail("bad arity '" + arity + "'");
    auto cls = output_class_from_string(line.fields[2]);
    if (!cls) fail("unknown class '" + line.fields[2] + "'");
    info.output_class = *cls;
    if (line.fields.size() == 4 && !line.fields[3].empty()) {
      const std::string& hex = line.fields[3];
      std::uint32_t cp = 0;
      auto [q, ec2] = std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
      if (ec2 != std::errc() || q != hex.data() + hex.size() || cp > 0x10FFFF)
        fail("bad unicode '" + hex + "'");
      info.unicode = static_cast<char32_t>(cp);
    }
    std::string key = info.name;
    if (!reg.entries_.emplace(std::move(key), std::move(info)).second)
      fail("duplicate command '" + line.fields[0] + "'");
  }
  return reg;
}

CommandRegistry CommandRegistry::load(const std::string& path) {
  return from_tsv(tsv::read_file(path));
}

const CommandInfo* CommandRegistry::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<CommandInfo> CommandRegistry::entries() const {
  std::vector<CommandInfo> out;
  out.reserve(entries_.size());
  for (const auto& [_, info] : entries_) out.push_back(info);
  return out;
}

const CommandRegistry& default_registry() {
  static const CommandRegistry reg = CommandRegistry::from_tsv(embedded::commands_tsv);
  return reg;
}

std::vector<CommandInfo> supported_commands() { return default_registry().entries(); }

}  // namespace mathkg
