// texvc parsing, validation, normalization and canonical printing.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mathkg/ast.hpp"
#include "mathkg/registry.hpp"

namespace mathkg {

class MacroTable;

inline constexpr std::size_t kMaxInputBytes = 64 * 1024;

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  std::size_t byte_offset = 0;
  std::size_t length = 0;
  std::vector<std::string> expected;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// {"severity":…,"offset":…,"length":…,"expected":[…],"message":…}
std::string to_json(const Diagnostic& d);
std::string to_json(const std::vector<Diagnostic>& ds);

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic d);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

class ParseResult {
 public:
  ParseResult(MathNode tree, std::vector<Diagnostic> warnings)
      : value_(std::move(tree)), warnings_(std::move(warnings)) {}
  explicit ParseResult(Diagnostic error) : value_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<MathNode>(value_); }
  explicit operator bool() const { return ok(); }

  const MathNode& tree() const { return std::get<MathNode>(value_); }
  const Diagnostic& error() const { return std::get<Diagnostic>(value_); }
  const std::vector<Diagnostic>& warnings() const { return warnings_; }

 private:
  std::variant<MathNode, Diagnostic> value_;
  std::vector<Diagnostic> warnings_;
};

struct ParseOptions {
  const CommandRegistry* registry = nullptr;  // default_registry() when null
  const MacroTable* macros = nullptr;         // semantic macros disabled when null
};

// Parses a texvc formula. Never throws for any input; failures come back as
// a single error Diagnostic at the furthest position the grammar reached.
ParseResult parse_texvc(std::string_view input, const ParseOptions& opts = {});

// Throws ParseError on failure.
MathNode parse_or_throw(std::string_view input, const ParseOptions& opts = {});

// Contains an error diagnostic iff parse_texvc fails: the parse error first,
// then any warnings collected before the failure. Successful parses report
// only warnings (dangling scripts, deprecated aliases), so the list is empty
// for clean input.
std::vector<Diagnostic> validate(std::string_view input, const ParseOptions& opts = {});

// Canonical form: single-child rows are flattened, children normalized.
// Idempotent.
MathNode normalize(const MathNode& node);

// Canonical texvc source for a tree, such that parsing the output yields
// the same tree.
std::string print_texvc(const MathNode& node);

}  // namespace mathkg
