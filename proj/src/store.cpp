#include "mathkg/store.hpp"

#include <algorithm>
#include <charconv>

#include "mathkg/macros.hpp"
#include "mathkg/texvc.hpp"

namespace mathkg {

std::string EntityId::str() const {
  return (kind == EntityKind::item ? "Q" : "P") + std::to_string(number);
}

std::optional<EntityId> EntityId::parse(std::string_view s) {
  if (s.size() < 2 || (s[0] != 'Q' && s[0] != 'P') || s[1] == '0') return std::nullopt;
  std::uint64_t n = 0;
  auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), n);
  if (ec != std::errc() || p != s.data() + s.size() || n == 0) return std::nullopt;
  return EntityId{s[0] == 'Q' ? EntityKind::item : EntityKind::property, n};
}

namespace {

constexpr std::pair<Datatype, std::string_view> kDatatypeNames[] = {
    {Datatype::item, "item"}, {Datatype::string, "string"}, {Datatype::external_id, "external-id"},
    {Datatype::math, "math"}, {Datatype::url, "url"},       {Datatype::time, "time"},
};

}  // namespace

std::string_view to_string(Datatype d) {
  for (const auto& [dt, name] : kDatatypeNames)
    if (dt == d) return name;
  return "?";
}

std::optional<Datatype> datatype_from_string(std::string_view s) {
  for (const auto& [dt, name] : kDatatypeNames)
    if (name == s) return dt;
  return std::nullopt;
}

std::string_view to_string(Completeness c) { return c == Completeness::full ? "full" : "stub"; }

Datatype datatype_of(const StatementValue& v) {
  // Variant order matches the Datatype enumerators.
  return static_cast<Datatype>(v.index());
}

std::string render_value(const StatementValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ItemRef>) return x.id.str();
        else if constexpr (std::is_same_v<T, StringVal>) return x.value;
        else if constexpr (std::is_same_v<T, ExternalIdVal>) return x.value;
        else if constexpr (std::is_same_v<T, MathVal>) return x.texvc;
        else if constexpr (std::is_same_v<T, UrlVal>) return x.url;
        else return x.iso;
      },
      v);
}

std::string Entity::label(const std::string& lang) const {
  auto it = labels.find(lang);
  return it == labels.end() ? std::string() : it->second;
}

KnowledgeStore::KnowledgeStore(const ExternalIdRegistry& ids) : ids_(ids) {}

void KnowledgeStore::check_labels_free(EntityKind kind, const LangMap& labels,
                                       std::optional<EntityId> self) const {
  for (const auto& [lang, text] : labels) {
    if (text.empty())
      throw StoreError(StoreError::Code::invalid_value, "empty label for language " + lang);
    auto it = labels_.find(std::make_tuple(kind, lang, text));
    if (it != labels_.end() && it->second != self)
      throw StoreError(StoreError::Code::label_collision,
                       "label '" + text + "'@" + lang + " already used by " + it->second.str());
  }
}

void KnowledgeStore::index_labels(const Entity& e) {
  for (const auto& [lang, text] : e.labels) labels_[std::make_tuple(e.id.kind, lang, text)] = e.id;
}

EntityId KnowledgeStore::create_entity(EntityKind kind, LangMap labels, LangMap descriptions,
                                       AliasMap aliases, std::optional<Datatype> datatype) {
  Lock lock(mu_);
  if (kind == EntityKind::property && !datatype)
    throw StoreError(StoreError::Code::missing_datatype, "property requires a datatype");
  if (kind == EntityKind::item && datatype)
    throw StoreError(StoreError::Code::unexpected_datatype, "items carry no datatype");
  check_labels_free(kind, labels, std::nullopt);

  auto e = std::make_shared<Entity>();
  e->id = {kind, kind == EntityKind::item ? next_item_++ : next_property_++};
  e->labels = std::move(labels);
  e->descriptions = std::move(descriptions);
  e->aliases = std::move(aliases);
  e->datatype = datatype;
  index_labels(*e);
  EntityId id = e->id;
  entities_.emplace(id, std::move(e));
  return id;
}

void KnowledgeStore::check_value(const StatementValue& v, Datatype expected,
                                 EntityId subject) const {
  if (datatype_of(v) != expected)
    throw StoreError(StoreError::Code::datatype_mismatch,
                     "value of type " + std::string(to_string(datatype_of(v))) +
                         " where property expects " + std::string(to_string(expected)));
  if (const auto* ref = std::get_if<ItemRef>(&v)) {
    if (!entities_.count(ref->id))
      throw StoreError(StoreError::Code::unknown_entity, "reference to unknown " + ref->id.str());
  } else if (const auto* m = std::get_if<MathVal>(&v)) {
    ParseOptions opts;
    opts.macros = &default_macro_table();
    auto r = parse_texvc(m->texvc, opts);
    if (!r.ok())
      throw StoreError(StoreError::Code::invalid_value,
                       "invalid formula '" + m->texvc + "': " + r.error().message);
  } else if (const auto* x = std::get_if<ExternalIdVal>(&v)) {
    if (x->type.empty() || x->value.empty())
      throw StoreError(StoreError::Code::invalid_value, "empty external identifier");
    if (const auto* t = ids_.find(x->type); t && !t->matches(x->value))
      throw StoreError(StoreError::Code::invalid_value,
                       "'" + x->value + "' is not a valid " + x->type);
    auto it = external_.find(std::make_pair(x->type, x->value));
    if (it != external_.end() && it->second != subject)
      throw StoreError(StoreError::Code::duplicate_external_id,
                       x->type + " " + x->value + " already identifies " + it->second.str());
  }
}

void KnowledgeStore::check_statement(EntityId subject, const Statement& st) const {
  auto pit = entities_.find(st.property);
  if (st.property.kind != EntityKind::property || pit == entities_.end())
    throw StoreError(StoreError::Code::unknown_entity, "unknown property " + st.property.str());
  check_value(st.value, *pit->second->datatype, subject);
  for (const auto& q : st.qualifiers) {
    auto qit = entities_.find(q.property);
    if (q.property.kind != EntityKind::property || qit == entities_.end())
      throw StoreError(StoreError::Code::unknown_entity, "unknown property " + q.property.str());
    check_value(q.value, *qit->second->datatype, subject);
  }
}

StatementHandle KnowledgeStore::add_statement(EntityId subject, Statement st) {
  Lock lock(mu_);
  auto it = entities_.find(subject);
  if (it == entities_.end())
    throw StoreError(StoreError::Code::unknown_entity, "unknown subject " + subject.str());
  const auto& stmts = it->second->statements;
  for (std::size_t i = 0; i < stmts.size(); ++i)
    if (stmts[i].property == st.property && stmts[i].value == st.value) return {subject, i};
  check_statement(subject, st);

  auto copy = std::make_shared<Entity>(*it->second);
  if (const auto* x = std::get_if<ExternalIdVal>(&st.value))
    external_[std::make_pair(x->type, x->value)] = subject;
  copy->statements.push_back(std::move(st));
  std::size_t index = copy->statements.size() - 1;
  it->second = std::move(copy);
  return {subject, index};
}

std::optional<EntityId> KnowledgeStore::resolve_external(std::string_view type_name,
                                                         std::string_view value) const {
  const ExternalIdType* t = ids_.find(type_name);
  if (!t)
    throw StoreError(StoreError::Code::unregistered_type,
                     "unregistered identifier type '" + std::string(type_name) + "'");
  if (!t->matches(value))
    throw StoreError(StoreError::Code::invalid_value,
                     "'" + std::string(value) + "' is not a valid " + t->name);
  return find_external(type_name, value);
}

std::optional<EntityId> KnowledgeStore::find_external(std::string_view type_name,
                                                      std::string_view value) const {
  ReadLock lock(mu_);
  auto it = external_.find(std::make_pair(std::string(type_name), std::string(value)));
  if (it == external_.end()) return std::nullopt;
  return it->second;
}

void KnowledgeStore::record_mapping(EntityId local, const std::string& source,
                                    const std::string& upstream, Completeness completeness) {
  Lock lock(mu_);
  if (!entities_.count(local))
    throw StoreError(StoreError::Code::unknown_entity, "unknown entity " + local.str());
  auto key = std::make_pair(source, upstream);
  if (auto it = mappings_.find(key); it != mappings_.end()) {
    IdMapping& m = it->second;
    if (m.local != local)
      throw StoreError(StoreError::Code::mapping_conflict,
                       source + " " + upstream + " is already mapped to " + m.local.str());
    if (m.completeness == Completeness::full && completeness == Completeness::stub)
      throw StoreError(StoreError::Code::completeness_downgrade,
                       local.str() + " is already fully imported");
    m.completeness = completeness;
    return;
  }
  for (const auto& [_, m] : mappings_)
    if (m.local == local && m.source == source)
      throw StoreError(StoreError::Code::mapping_conflict,
                       local.str() + " is already mapped to " + source + " " + m.upstream);
  mappings_.emplace(std::move(key), IdMapping{local, source, upstream, completeness});
}

std::optional<IdMapping> KnowledgeStore::get_mapping(std::string_view source,
                                                     std::string_view upstream) const {
  ReadLock lock(mu_);
  auto it = mappings_.find(std::make_pair(std::string(source), std::string(upstream)));
  if (it == mappings_.end()) return std::nullopt;
  return it->second;
}

std::optional<IdMapping> KnowledgeStore::get_mapping_for(EntityId local,
                                                         std::string_view source) const {
  ReadLock lock(mu_);
  for (const auto& [_, m] : mappings_)
    if (m.local == local && m.source == source) return m;
  return std::nullopt;
}

std::shared_ptr<const Entity> KnowledgeStore::get(EntityId id) const {
  ReadLock lock(mu_);
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : it->second;
}

std::optional<EntityId> KnowledgeStore::find_by_label(EntityKind kind, std::string_view label,
                                                      const std::string& lang) const {
  ReadLock lock(mu_);
  auto it = labels_.find(std::make_tuple(kind, lang, std::string(label)));
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::vector<EntityId> KnowledgeStore::find_by_label_or_alias(EntityKind kind,
                                                             std::string_view text,
                                                             const std::string& lang) const {
  ReadLock lock(mu_);
  std::vector<EntityId> out;
  for (const auto& [id, e] : entities_) {
    if (id.kind != kind) continue;
    bool hit = e->label(lang) == text;
    if (!hit) {
      auto a = e->aliases.find(lang);
      if (a != e->aliases.end())
        hit = std::find(a->second.begin(), a->second.end(), text) != a->second.end();
    }
    if (hit) out.push_back(id);
  }
  return out;
}

std::vector<std::shared_ptr<const Entity>> KnowledgeStore::snapshot() const {
  ReadLock lock(mu_);
  std::vector<std::shared_ptr<const Entity>> out;
  out.reserve(entities_.size());
  // EntityKind::item sorts before property; emit properties first.
  for (const auto& [id, e] : entities_)
    if (id.kind == EntityKind::property) out.push_back(e);
  for (const auto& [id, e] : entities_)
    if (id.kind == EntityKind::item) out.push_back(e);
  return out;
}

std::vector<IdMapping> KnowledgeStore::mappings() const {
  ReadLock lock(mu_);
  std::vector<IdMapping> out;
  for (const auto& [_, m] : mappings_) out.push_back(m);
  return out;
}

std::size_t KnowledgeStore::entity_count() const {
  ReadLock lock(mu_);
  return entities_.size();
}

std::size_t KnowledgeStore::statement_count() const {
  ReadLock lock(mu_);
  std::size_t n = 0;
  for (const auto& [_, e] : entities_) n += e->statements.size();
  return n;
}

std::size_t KnowledgeStore::triple_count() const {
  ReadLock lock(mu_);
  std::size_t n = 0;
  for (const auto& [_, e] : entities_)
    for (const auto& s : e->statements) n += 1 + s.qualifiers.size();
  return n;
}

void KnowledgeStore::clear() {
  entities_.clear();
  labels_.clear();
  external_.clear();
  mappings_.clear();
  next_item_ = next_property_ = 1;
}

void KnowledgeStore::restore(std::vector<Entity> entities, std::vector<IdMapping> mappings) {
  Lock lock(mu_);
  if (!entities_.empty() || !mappings_.empty())
    throw StoreError(StoreError::Code::corrupt_file, "restore requires an empty store");
  try {
    for (auto& e : entities) {
      if (e.id.number == 0)
        throw StoreError(StoreError::Code::corrupt_file, "entity without id");
      if ((e.id.kind == EntityKind::property) != e.datatype.has_value())
        throw StoreError(StoreError::Code::missing_datatype,
                         e.id.str() + ": datatype must be present exactly for properties");
      if (entities_.count(e.id))
        throw StoreError(StoreError::Code::corrupt_file, "duplicate entity " + e.id.str());
      check_labels_free(e.id.kind, e.labels, std::nullopt);
      index_labels(e);
      auto& next = e.id.kind == EntityKind::item ? next_item_ : next_property_;
      next = std::max(next, e.id.number + 1);
      EntityId id = e.id;
      entities_.emplace(id, std::make_shared<Entity>(std::move(e)));
    }
    // Statements are checked once every entity exists, since references
    // may point forward in the file.
    for (const auto& [id, e] : entities_) {
      for (std::size_t i = 0; i < e->statements.size(); ++i) {
        const Statement& st = e->statements[i];
        check_statement(id, st);
        for (std::size_t j = 0; j < i; ++j)
          if (e->statements[j].property == st.property && e->statements[j].value == st.value)
            throw StoreError(StoreError::Code::corrupt_file,
                             id.str() + ": duplicate statement");
        if (const auto* x = std::get_if<ExternalIdVal>(&st.value))
          external_[std::make_pair(x->type, x->value)] = id;
      }
    }
    for (auto& m : mappings) {
      if (!entities_.count(m.local))
        throw StoreError(StoreError::Code::unknown_entity,
                         "mapping for unknown entity " + m.local.str());
      auto key = std::make_pair(m.source, m.upstream);
      if (mappings_.count(key))
        throw StoreError(StoreError::Code::mapping_conflict,
                         "duplicate mapping " + m.source + " " + m.upstream);
      mappings_.emplace(std::move(key), std::move(m));
    }
  } catch (...) {
    clear();
    throw;
  }
}

}  // namespace mathkg
