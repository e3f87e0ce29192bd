// Data-driven table of supported texvc commands.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mathkg {

enum class OutputClass { identifier, op, layout, accent, text, space };

std::string_view to_string(OutputClass c);
std::optional<OutputClass> output_class_from_string(std::string_view s);

struct CommandInfo {
  std::string name;
  int arity = 0;
  OutputClass output_class = OutputClass::identifier;
  std::optional<char32_t> unicode;
};

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CommandRegistry {
 public:
  // TSV: name, arity, class, optional unicode hex. Throws RegistryError on
  // duplicate names or malformed rows.
  static CommandRegistry from_tsv(std::string_view text);
  static CommandRegistry load(const std::string& path);

  const CommandInfo* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::size_t size() const { return entries_.size(); }

  // Sorted by name.
  std::vector<CommandInfo> entries() const;

 private:
  std::map<std::string, CommandInfo, std::less<>> entries_;
};

// The registry compiled from data/commands.tsv.
const CommandRegistry& default_registry();

// Stable, sorted listing of the default registry.
std::vector<CommandInfo> supported_commands();

}  // namespace mathkg
