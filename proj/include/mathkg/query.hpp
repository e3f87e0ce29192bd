// Triple-pattern queries, transitive closure and formula homepages over a
// KnowledgeStore.

#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mathkg/macros.hpp"
#include "mathkg/mathml.hpp"
#include "mathkg/store.hpp"

namespace mathkg {

struct Var {
  std::string name;  // without the leading '?'
  friend auto operator<=>(const Var&, const Var&) = default;
};

// Matches any non-item value whose plain text equals text.
struct Literal {
  std::string text;
};

using EntityTerm = std::variant<Var, EntityId>;
using ValueTerm = std::variant<Var, StatementValue, Literal>;

struct TriplePattern {
  EntityTerm subject;
  EntityTerm property;
  ValueTerm value;
};

// Every variable is bound; entities are bound as ItemRef.
struct BindingSet {
  std::vector<std::string> vars;  // sorted
  std::vector<std::vector<StatementValue>> rows;

  std::string to_tsv() const;  // header line "?a\t?b", then one row per line
  std::string to_json() const;
};

class QueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Join of all patterns over the main statements of every entity. Rows are
// deduplicated and sorted by their rendered values.
BindingSet select(const KnowledgeStore& store, const std::vector<TriplePattern>& patterns);

enum class Direction { forward, inverse };

// Entities reachable from start through one or more property edges.
// Inverse direction follows statements that point at the frontier. start
// is included only when it lies on a cycle.
std::set<EntityId> transitive(const KnowledgeStore& store, EntityId start, EntityId property,
                              Direction direction);

// Resolves "Q7", "P4" or "<label>". Labels are matched against English
// labels first, then aliases; ambiguity is an error.
EntityId resolve_entity_ref(const KnowledgeStore& store, std::string_view ref,
                            std::optional<EntityKind> kind = std::nullopt);

// Textual form: patterns separated by '.', each "subject property value"
// where a term is ?var, Q7/P4, <label>, or a "quoted string" (value only).
// Quoted strings match string, math, URL, time and external-id values.
std::vector<TriplePattern> parse_patterns(const KnowledgeStore& store, std::string_view text);

// Label of the property formulas use to point at concepts.
inline constexpr std::string_view kUsesLabel = "uses symbol concept";
inline constexpr std::string_view kFormulaLabel = "defining formula";

// Concept key -> "<base><QID>" for the item labelled with that key.
LinkResolver store_link_resolver(const KnowledgeStore& store,
                                 std::string base_url = "/wiki/Item:");

struct LinkedConcept {
  EntityId id;
  std::string label;
  std::string url;
};

struct ExternalIdLink {
  std::string type;
  std::string value;
  std::string url;  // empty for unregistered types
};

struct HomepageDoc {
  EntityId item;
  std::string title;
  std::string texvc;
  std::string mathml;
  std::vector<LinkedConcept> linked_concepts;
  std::vector<ExternalIdLink> external_ids;
  std::vector<EntityId> backlinks;

  std::string to_html() const;
  std::string to_json() const;
};

struct HomepageOptions {
  const MacroTable* macros = nullptr;  // default_macro_table() when null
  std::string base_url = "/wiki/Item:";
};

// Throws QueryError when the item has no formula statement.
HomepageDoc formula_homepage(const KnowledgeStore& store, EntityId item,
                             const HomepageOptions& opts = {});

}  // namespace mathkg
