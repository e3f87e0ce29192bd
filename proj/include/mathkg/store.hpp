// Wikibase-model entity store: items and properties, statements, external
// identifier lookup and the local/upstream ID mapping table.
//
// Single writer, many readers. Every mutation replaces the affected entity
// with a fresh immutable copy, so a shared_ptr<const Entity> obtained from
// get() stays valid and unchanged while the store moves on.

#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "mathkg/external_ids.hpp"

namespace mathkg {

enum class EntityKind { item, property };

struct EntityId {
  EntityKind kind = EntityKind::item;
  std::uint64_t number = 0;

  std::string str() const;  // "Q12", "P4"
  // Accepts "Q<n>" / "P<n>" with n >= 1.
  static std::optional<EntityId> parse(std::string_view s);

  friend auto operator<=>(const EntityId&, const EntityId&) = default;
};

inline EntityId item_id(std::uint64_t n) { return {EntityKind::item, n}; }
inline EntityId property_id(std::uint64_t n) { return {EntityKind::property, n}; }

enum class Datatype { item, string, external_id, math, url, time };

std::string_view to_string(Datatype d);
std::optional<Datatype> datatype_from_string(std::string_view s);

struct ItemRef {
  EntityId id;
  friend auto operator<=>(const ItemRef&, const ItemRef&) = default;
};
struct StringVal {
  std::string value;
  friend auto operator<=>(const StringVal&, const StringVal&) = default;
};
struct ExternalIdVal {
  std::string type;
  std::string value;
  friend auto operator<=>(const ExternalIdVal&, const ExternalIdVal&) = default;
};
struct MathVal {
  std::string texvc;
  friend auto operator<=>(const MathVal&, const MathVal&) = default;
};
struct UrlVal {
  std::string url;
  friend auto operator<=>(const UrlVal&, const UrlVal&) = default;
};
struct TimeVal {
  std::string iso;
  friend auto operator<=>(const TimeVal&, const TimeVal&) = default;
};

using StatementValue = std::variant<ItemRef, StringVal, ExternalIdVal, MathVal, UrlVal, TimeVal>;

Datatype datatype_of(const StatementValue& v);
// Plain text form used in TSV output: entity IDs, raw strings, texvc.
std::string render_value(const StatementValue& v);

struct Qualifier {
  EntityId property;
  StatementValue value;
  friend auto operator<=>(const Qualifier&, const Qualifier&) = default;
};

struct Statement {
  EntityId property;
  StatementValue value;
  std::vector<Qualifier> qualifiers;
  friend bool operator==(const Statement&, const Statement&) = default;
};

using LangMap = std::map<std::string, std::string>;
using AliasMap = std::map<std::string, std::vector<std::string>>;

struct Entity {
  EntityId id;
  LangMap labels;
  LangMap descriptions;
  AliasMap aliases;
  std::vector<Statement> statements;
  std::optional<Datatype> datatype;  // properties only

  // Empty string when the language has no label.
  std::string label(const std::string& lang = "en") const;
  friend bool operator==(const Entity&, const Entity&) = default;
};

struct StatementHandle {
  EntityId subject;
  std::size_t index = 0;
};

enum class Completeness { stub, full };

std::string_view to_string(Completeness c);

struct IdMapping {
  EntityId local;
  std::string source;
  std::string upstream;
  Completeness completeness = Completeness::stub;
  friend bool operator==(const IdMapping&, const IdMapping&) = default;
};

class StoreError : public std::runtime_error {
 public:
  enum class Code {
    label_collision,
    missing_datatype,
    unexpected_datatype,
    unknown_entity,
    datatype_mismatch,
    invalid_value,
    duplicate_external_id,
    unregistered_type,
    mapping_conflict,
    completeness_downgrade,
    corrupt_file,
  };
  StoreError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

class KnowledgeStore {
 public:
  explicit KnowledgeStore(const ExternalIdRegistry& ids = default_external_ids());
  KnowledgeStore(const KnowledgeStore&) = delete;
  KnowledgeStore& operator=(const KnowledgeStore&) = delete;

  EntityId create_entity(EntityKind kind, LangMap labels, LangMap descriptions = {},
                         AliasMap aliases = {}, std::optional<Datatype> datatype = std::nullopt);

  // Idempotent on property+value: an existing statement with the same
  // property and value is returned unchanged (its qualifiers are kept).
  StatementHandle add_statement(EntityId subject, Statement st);

  // The entity carrying ExternalIdVal(type_name, value). Throws for an
  // unregistered type or a value that fails the type's pattern.
  std::optional<EntityId> resolve_external(std::string_view type_name,
                                           std::string_view value) const;
  // Same lookup without registry checks; works for any type string.
  std::optional<EntityId> find_external(std::string_view type_name, std::string_view value) const;

  void record_mapping(EntityId local, const std::string& source, const std::string& upstream,
                      Completeness completeness);
  std::optional<IdMapping> get_mapping(std::string_view source, std::string_view upstream) const;
  std::optional<IdMapping> get_mapping_for(EntityId local, std::string_view source) const;

  std::shared_ptr<const Entity> get(EntityId id) const;
  bool exists(EntityId id) const { return get(id) != nullptr; }
  std::optional<EntityId> find_by_label(EntityKind kind, std::string_view label,
                                        const std::string& lang = "en") const;
  // Entities whose label or any alias equals text.
  std::vector<EntityId> find_by_label_or_alias(EntityKind kind, std::string_view text,
                                               const std::string& lang = "en") const;

  // Properties first, then items, each by ascending number.
  std::vector<std::shared_ptr<const Entity>> snapshot() const;
  // Sorted by (source, upstream).
  std::vector<IdMapping> mappings() const;

  std::size_t entity_count() const;
  std::size_t statement_count() const;
  // Main statements plus qualifiers, each counted as one triple.
  std::size_t triple_count() const;
  bool empty() const { return entity_count() == 0; }

  const ExternalIdRegistry& external_ids() const { return ids_; }

  // Bulk load of previously exported state into an empty store. IDs are
  // kept as given and every invariant is checked after loading; on failure
  // the store is left empty.
  void restore(std::vector<Entity> entities, std::vector<IdMapping> mappings);

 private:
  using Lock = std::unique_lock<std::shared_mutex>;
  using ReadLock = std::shared_lock<std::shared_mutex>;

  void check_value(const StatementValue& v, Datatype expected, EntityId subject) const;
  void check_statement(EntityId subject, const Statement& st) const;
  void index_labels(const Entity& e);
  void check_labels_free(EntityKind kind, const LangMap& labels, std::optional<EntityId> self) const;
  void clear();

  const ExternalIdRegistry& ids_;
  mutable std::shared_mutex mu_;
  std::map<EntityId, std::shared_ptr<const Entity>> entities_;
  std::map<std::tuple<EntityKind, std::string, std::string>, EntityId, std::less<>> labels_;
  std::map<std::pair<std::string, std::string>, EntityId, std::less<>> external_;
  std::map<std::pair<std::string, std::string>, IdMapping, std::less<>> mappings_;
  std::uint64_t next_item_ = 1;
  std::uint64_t next_property_ = 1;
};

// JSON-lines persistence: <dir>/entities.jsonl and <dir>/mappings.jsonl.
// Output is canonical, so export → import → export is byte-stable.
void export_store(const KnowledgeStore& store, const std::filesystem::path& dir);
void import_store(KnowledgeStore& store, const std::filesystem::path& dir);

// One-line JSON encodings, exposed for tests and tools.
std::string entity_to_json(const Entity& e);
Entity entity_from_json(std::string_view line);
std::string value_to_json(const StatementValue& v);

}  // namespace mathkg
