// Semantic macro table: macros render like plain texvc but carry a concept
// key that resolves to a knowledge-graph item.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mathkg/ast.hpp"
#include "mathkg/registry.hpp"

namespace mathkg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MacroDef {
  std::string name;
  std::string rendered_texvc;
  std::string concept_key;
  std::string fallback_url;  // may be empty
  MathNode rendered;         // parse(rendered_texvc)
};

class MacroTable {
 public:
  // TSV: macro, rendered_texvc, concept_key, fallback_url. Throws
  // ConfigError if a rendering fails to parse, a concept key is empty, or
  // a macro name shadows a registry command.
  static MacroTable from_tsv(std::string_view text,
                             const CommandRegistry& registry = default_registry());
  static MacroTable load(const std::string& path,
                         const CommandRegistry& registry = default_registry());

  const MacroDef* find(std::string_view name) const;
  // Macro whose concept_key equals key, if any.
  const MacroDef* find_by_concept(std::string_view key) const;
  std::vector<const MacroDef*> entries() const;
  bool empty() const { return defs_.empty(); }

  // Throws ConfigError if any macro name is also a registry command.
  void check_against(const CommandRegistry& registry) const;

 private:
  std::map<std::string, MacroDef, std::less<>> defs_;
};

const MacroTable& default_macro_table();

// Parses texvc with semantic macros enabled. Throws ParseError on syntax
// errors and ConfigError when the table collides with the registry.
MathNode expand_semantics(std::string_view input, const MacroTable& table = default_macro_table(),
                          const CommandRegistry& registry = default_registry());

// Concept keys of every SemanticMacro in the tree.
std::set<std::string> extract_concepts(const MathNode& ast);

// Replaces every macro occurrence in texvc source with its rendering
// (textual substitution at control-word boundaries).
std::string desugar(std::string_view input, const MacroTable& table = default_macro_table());

}  // namespace mathkg
