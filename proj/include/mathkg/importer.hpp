// Import of upstream records into a KnowledgeStore: depth-limited entity
// import through a SourceConnector, and batch runs of datasource parsers.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mathkg/store.hpp"

namespace mathkg {

// Reference to another entity as the upstream source names it.
struct UpstreamRef {
  enum class Kind {
    upstream,  // upstream ID in the same source ("Q11")
    external,  // external identifier (type, value), e.g. CRAN Project "ggplot2"
    label,     // English label of an existing local item
  };
  Kind kind = Kind::upstream;
  std::string id;       // upstream ID, identifier value or label
  std::string id_type;  // for external refs
  friend auto operator<=>(const UpstreamRef&, const UpstreamRef&) = default;
};

using UpstreamValue = std::variant<UpstreamRef, StringVal, ExternalIdVal, MathVal, UrlVal, TimeVal>;

struct UpstreamStatement {
  std::string property;  // upstream property name, translated through a PropertyMap
  UpstreamValue value;
  friend auto operator<=>(const UpstreamStatement&, const UpstreamStatement&) = default;
};

struct UpstreamRecord {
  std::string source;
  std::string upstream_id;
  LangMap labels;
  LangMap descriptions;
  AliasMap aliases;
  // External-id statements that identify the record in its source. Stubs
  // receive these and nothing else.
  std::vector<UpstreamStatement> identifiers;
  std::vector<UpstreamStatement> statements;
};

enum class Category { publication, author, journal, software, dataset, formula, package, collection };

std::string_view to_string(Category c);
std::optional<Category> category_from_string(std::string_view s);

struct RecordError {
  std::string record;  // upstream ID, or "line N" when the ID is unknown
  std::string message;
};

struct ParsedRecord {
  Category category;
  UpstreamRecord record;
};

struct ParseOutput {
  std::vector<ParsedRecord> records;
  std::vector<RecordError> errors;  // records that could not be parsed at all
};

class RecordParser {
 public:
  virtual ~RecordParser() = default;
  virtual std::string source() const = 0;
  virtual ParseOutput parse(std::string_view raw) const = 0;
};

// JSON lines, one entity per line:
// {"id":"Q1","labels":{…},"descriptions":{…},"aliases":{…},"category":"formula",
//  "claims":[{"property":"P31","value":{"type":"item","id":"Q2"}}, …]}
class WikidataJsonParser : public RecordParser {
 public:
  std::string source() const override { return "wikidata"; }
  ParseOutput parse(std::string_view raw) const override;
};

// DESCRIPTION-style stanzas separated by blank lines.
class CranDescriptionParser : public RecordParser {
 public:
  std::string source() const override { return "cran"; }
  ParseOutput parse(std::string_view raw) const override;
};

// TSV: dlmf_id, texvc, uses_concepts (comma list of concept labels or DLMF
// IDs). Concepts carried by semantic macros in the formula are added to the
// explicit list.
class DlmfTsvParser : public RecordParser {
 public:
  std::string source() const override { return "dlmf"; }
  ParseOutput parse(std::string_view raw) const override;
};

// JSON lines of publications with nested authors and journal.
class BiblioJsonParser : public RecordParser {
 public:
  std::string source() const override { return "biblio"; }
  ParseOutput parse(std::string_view raw) const override;
};

// Parser for a fixture file name, chosen by suffix: .wikidata.jsonl, .dcf,
// .dlmf.tsv, .biblio.jsonl. Null when unrecognized.
std::unique_ptr<RecordParser> parser_for(const std::filesystem::path& file);

class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// fetch() must be safe to call concurrently.
class SourceConnector {
 public:
  virtual ~SourceConnector() = default;
  virtual std::string source() const = 0;
  virtual UpstreamRecord fetch(const std::string& upstream_id) const = 0;
};

// Serves records from a Wikidata-style JSON-lines fixture file.
class FixtureConnector : public SourceConnector {
 public:
  explicit FixtureConnector(const std::filesystem::path& file);
  static FixtureConnector from_text(std::string_view jsonl);

  std::string source() const override { return "wikidata"; }
  UpstreamRecord fetch(const std::string& upstream_id) const override;
  std::vector<std::string> ids() const;

 private:
  FixtureConnector() = default;
  std::map<std::string, UpstreamRecord> records_;
};

struct PropertyMapping {
  std::string local_label;
  Datatype datatype;
  std::vector<std::string> aliases;
};

class PropertyMap {
 public:
  // TSV: source, upstream_property, local_label, datatype, [aliases].
  static PropertyMap from_tsv(std::string_view text);
  static PropertyMap load(const std::string& path);

  const PropertyMapping* find(std::string_view source, std::string_view upstream) const;

 private:
  std::map<std::pair<std::string, std::string>, PropertyMapping, std::less<>> rows_;
};

const PropertyMap& default_property_map();

struct ImportReport {
  int created = 0;
  int updated = 0;
  int deduplicated = 0;
  std::vector<RecordError> errors;
  std::vector<std::string> warnings;

  ImportReport& operator+=(const ImportReport& o);
  std::string to_json() const;
};

class ImportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Importer {
 public:
  explicit Importer(KnowledgeStore& store, const PropertyMap& map = default_property_map());

  // Breadth-first import. Entities at distance < depth from the target get
  // their statements (completeness full), entities at distance == depth
  // only labels, descriptions, aliases and identifiers (stub).
  EntityId import_entity(const SourceConnector& connector, const std::string& upstream_id,
                         int depth = 1);

  ImportReport run_datasource(const RecordParser& parser, const std::filesystem::path& input);
  ImportReport run_text(const RecordParser& parser, std::string_view raw);

  // Runs every recognized fixture file in dir, in file-name order.
  ImportReport seed(const std::filesystem::path& dir);

  // Warnings from import_entity calls (unmapped properties and the like).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::optional<EntityId> local_property(const std::string& source, const std::string& upstream,
                                         std::vector<std::string>& warnings);
  std::optional<StatementValue> local_value(const std::string& source, const UpstreamValue& v,
                                            bool create_stubs);
  void add_statements(EntityId subject, const UpstreamRecord& rec,
                      const std::vector<UpstreamStatement>& stmts, bool create_stubs,
                      std::vector<std::string>& warnings);

  KnowledgeStore& store_;
  const PropertyMap& map_;
  std::vector<std::string> warnings_;
};

}  // namespace mathkg
