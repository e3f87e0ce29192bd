#include "mathkg/macros.hpp"

#include "mathkg/embedded_data.hpp"
#include "mathkg/texvc.hpp"
#include "mathkg/tsv.hpp"

namespace mathkg {

MacroTable MacroTable::from_tsv(std::string_view text, const CommandRegistry& registry) {
  MacroTable table;
  for (const auto& line : tsv::parse(text)) {
    auto fail = [&](const std::string& what) {
      throw ConfigError("macro table line " + std::to_string(line.number) + ": " + what);
    };
    if (line.fields.size() < 3 || line.fields.size() > 4) fail("expected 3 or 4 columns");
    const std::string& name = line.fields[0];
    if (name.empty()) fail("empty macro name");
    if (registry.contains(name)) fail("macro \\" + name + " collides with a registry command");
    if (line.fields[2].empty()) fail("empty concept key");
    ParseOptions plain{&registry, nullptr};
    ParseResult r = parse_texvc(line.fields[1], plain);
    if (!r) fail("rendering of \\" + name + " does not parse: " + r.error().message);
    MacroDef def{name, line.fields[1], line.fields[2],
                 line.fields.size() == 4 ? line.fields[3] : std::string(), r.tree()};
    if (!table.defs_.emplace(name, std::move(def)).second) fail("duplicate macro \\" + name);
  }
  return table;
}

MacroTable MacroTable::load(const std::string& path, const CommandRegistry& registry) {
  return from_tsv(tsv::read_file(path), registry);
}

const MacroDef* MacroTable::find(std::string_view name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

const MacroDef* MacroTable::find_by_concept(std::string_view key) const {
  for (const auto& [_, def] : defs_)
    if (def.concept_key == key) return &def;
  return nullptr;
}

std::vector<const MacroDef*> MacroTable::entries() const {
  std::vector<const MacroDef*> out;
  for (const auto& [_, def] : defs_) out.push_back(&def);
  return out;
}

void MacroTable::check_against(const CommandRegistry& registry) const {
  for (const auto& [name, _] : defs_)
    if (registry.contains(name))
      throw ConfigError("macro \\" + name + " collides with a registry command");
}

const MacroTable& default_macro_table() {
  static const MacroTable table = MacroTable::from_tsv(embedded::macros_tsv);
  return table;
}

MathNode expand_semantics(std::string_view input, const MacroTable& table,
                          const CommandRegistry& registry) {
  table.check_against(registry);
  return parse_or_throw(input, ParseOptions{&registry, &table});
}

std::set<std::string> extract_concepts(const MathNode& ast) {
  std::set<std::string> out;
  visit_preorder(ast, [&](const MathNode& n) {
    if (const auto* m = n.as<SemanticMacro>()) out.insert(m->concept_key);
  });
  return out;
}

std::string desugar(std::string_view input, const MacroTable& table) {
  std::string out;
  std::size_t i = 0;
  auto is_letter = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  while (i < input.size()) {
    if (input[i] != '\\') {
      out += input[i++];
      continue;
    }
    std::size_t j = i + 1;
    while (j < input.size() && is_letter(input[j])) ++j;
    if (j == i + 1) {
      // control symbol: copy backslash and the following byte verbatim
      out += input[i++];
      if (i < input.size()) out += input[i++];
      continue;
    }
    std::string_view name = input.substr(i + 1, j - i - 1);
    if (const MacroDef* def = table.find(name)) {
      // A leading space keeps a preceding control word from absorbing the
      // rendering; braces keep multi-element renderings a single atom.
      out += ' ';
      bool group = def->rendered.is<Row>();
      if (group) out += '{';
      out += def->rendered_texvc;
      if (group) out += '}';
    } else {
      out += input.substr(i, j - i);
    }
    i = j;
  }
  return out;
}

}  // namespace mathkg
