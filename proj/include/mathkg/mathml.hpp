// Presentation MathML from the parse tree, by root-first traversal.
//
// Output is canonical: no XML declaration, no insignificant whitespace,
// attributes sorted by name, explicit end tags. Semantic macros become an
// <mrow href="…"> around their rendering when links are resolved and are
// indistinguishable from their plain rendering otherwise.

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mathkg/ast.hpp"
#include "mathkg/macros.hpp"
#include "mathkg/registry.hpp"

namespace mathkg {

inline constexpr std::string_view kMathMLNamespace = "http://www.w3.org/1998/Math/MathML";

enum class Display { block, inline_ };

using LinkResolver = std::function<std::optional<std::string>(std::string_view concept_key)>;

struct EmitOptions {
  Display display = Display::inline_;
  bool resolve_links = false;
  LinkResolver link_resolver;                 // consulted before the macro's fallback_url
  const MacroTable* macros = nullptr;         // default_macro_table() when null
  const CommandRegistry* registry = nullptr;  // default_registry() when null
  std::optional<std::string> tex_source;      // annotation text; print_texvc(ast) when unset
};

class EmitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A complete <math> document with a TeX annotation. Throws EmitError when a
// link cannot be resolved while resolve_links is on.
std::string emit_mathml(const MathNode& ast, const EmitOptions& opts = {});

// Just the presentation element for the tree, without <math>/<semantics>.
std::string emit_mathml_fragment(const MathNode& ast, const EmitOptions& opts = {});

// Escapes &, <, > and " for XML text and attribute values.
std::string xml_escape(std::string_view s);

}  // namespace mathkg
