#include "mathkg/importer.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mathkg/embedded_data.hpp"
#include "mathkg/macros.hpp"
#include "mathkg/texvc.hpp"
#include "mathkg/tsv.hpp"

namespace mathkg {

namespace {

void push_unique(std::vector<std::string>& list, std::string s) {
  if (std::find(list.begin(), list.end(), s) == list.end()) list.push_back(std::move(s));
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ImportError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> upstream_refs(const UpstreamRecord& rec) {
  std::vector<std::string> out;
  for (const auto& st : rec.statements)
    if (const auto* r = std::get_if<UpstreamRef>(&st.value); r && r->kind == UpstreamRef::Kind::upstream)
      out.push_back(r->id);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FixtureConnector, PropertyMap, ImportReport

FixtureConnector::FixtureConnector(const std::filesystem::path& file) {
  *this = from_text(read_text(file));
}

FixtureConnector FixtureConnector::from_text(std::string_view jsonl) {
  FixtureConnector c;
  ParseOutput parsed = WikidataJsonParser().parse(jsonl);
  if (!parsed.errors.empty())
    throw ImportError("fixture " + parsed.errors.front().record + ": " + parsed.errors.front().message);
  for (auto& pr : parsed.records) {
    std::string id = pr.record.upstream_id;
    if (!c.records_.emplace(id, std::move(pr.record)).second)
      throw ImportError("fixture lists " + id + " twice");
  }
  return c;
}

UpstreamRecord FixtureConnector::fetch(const std::string& upstream_id) const {
  auto it = records_.find(upstream_id);
  if (it == records_.end()) throw FetchError("no record for " + upstream_id);
  return it->second;
}

std::vector<std::string> FixtureConnector::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : records_) out.push_back(id);
  return out;
}

PropertyMap PropertyMap::from_tsv(std::string_view text) {
  PropertyMap m;
  for (const auto& line : tsv::parse(text)) {
    auto fail = [&](const std::string& what) {
      throw ConfigError("property map line " + std::to_string(line.number) + ": " + what);
    };
    if (line.fields.size() < 4 || line.fields.size() > 5) fail("expected 4 or 5 columns");
    auto dt = datatype_from_string(line.fields[3]);
    if (!dt) fail("unknown datatype '" + line.fields[3] + "'");
    PropertyMapping pm{line.fields[2], *dt, {}};
    if (pm.local_label.empty()) fail("empty local label");
    if (line.fields.size() == 5) {
      std::stringstream ss(line.fields[4]);
      for (std::string a; std::getline(ss, a, ',');)
        if (!a.empty()) pm.aliases.push_back(a);
    }
    if (!m.rows_.emplace(std::make_pair(line.fields[0], line.fields[1]), std::move(pm)).second)
      fail("duplicate mapping for " + line.fields[0] + " " + line.fields[1]);
  }
  return m;
}

PropertyMap PropertyMap::load(const std::string& path) { return from_tsv(tsv::read_file(path)); }

const PropertyMapping* PropertyMap::find(std::string_view source, std::string_view upstream) const {
  auto it = rows_.find(std::make_pair(std::string(source), std::string(upstream)));
  return it == rows_.end() ? nullptr : &it->second;
}

const PropertyMap& default_property_map() {
  static const PropertyMap m = PropertyMap::from_tsv(embedded::property_map_tsv);
  return m;
}

ImportReport& ImportReport::operator+=(const ImportReport& o) {
  created += o.created;
  updated += o.updated;
  deduplicated += o.deduplicated;
  errors.insert(errors.end(), o.errors.begin(), o.errors.end());
  for (const auto& w : o.warnings) push_unique(warnings, w);
  return *this;
}

std::string ImportReport::to_json() const {
  nlohmann::ordered_json j;
  j["created"] = created;
  j["updated"] = updated;
  j["deduplicated"] = deduplicated;
  j["errors"] = nlohmann::ordered_json::array();
  for (const auto& e : errors) j["errors"].push_back({{"record", e.record}, {"message", e.message}});
  j["warnings"] = warnings;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Importer

Importer::Importer(KnowledgeStore& store, const PropertyMap& map) : store_(store), map_(map) {}

std::optional<EntityId> Importer::local_property(const std::string& source,
                                                 const std::string& upstream,
                                                 std::vector<std::string>& warnings) {
  const PropertyMapping* pm = map_.find(source, upstream);
  if (!pm) {
    push_unique(warnings, "unmapped property " + source + ":" + upstream + " skipped");
    return std::nullopt;
  }
  auto ensure = [&](const std::string& label, Datatype dt,
                    const std::vector<std::string>& aliases) -> EntityId {
    if (auto id = store_.find_by_label(EntityKind::property, label)) {
      if (store_.get(*id)->datatype != dt)
        throw ImportError("property '" + label + "' exists with a different datatype");
      return *id;
    }
    AliasMap am;
    if (!aliases.empty()) am["en"] = aliases;
    return store_.create_entity(EntityKind::property, {{"en", label}}, {}, std::move(am), dt);
  };
  EntityId pid = ensure(pm->local_label, pm->datatype, pm->aliases);
  if (source == "wikidata" && upstream.size() > 1 && upstream[0] == 'P') {
    EntityId wd = ensure("wikidata PID", Datatype::external_id, {});
    store_.add_statement(pid, {wd, ExternalIdVal{"wikidata", upstream}, {}});
    store_.record_mapping(pid, "wikidata", upstream, Completeness::full);
  }
  return pid;
}

std::optional<StatementValue> Importer::local_value(const std::string& source,
                                                    const UpstreamValue& v, bool create_stubs) {
  const auto* ref = std::get_if<UpstreamRef>(&v);
  if (!ref) {
    return std::visit(
        [](const auto& x) -> std::optional<StatementValue> {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, UpstreamRef>) return std::nullopt;
          else return StatementValue{x};
        },
        v);
  }
  switch (ref->kind) {
    case UpstreamRef::Kind::upstream:
      if (auto m = store_.get_mapping(source, ref->id)) return ItemRef{m->local};
      return std::nullopt;
    case UpstreamRef::Kind::label:
      if (auto id = store_.find_by_label(EntityKind::item, ref->id)) return ItemRef{*id};
      return std::nullopt;
    case UpstreamRef::Kind::external: {
      if (auto id = store_.find_external(ref->id_type, ref->id)) return ItemRef{*id};
      if (!create_stubs) return std::nullopt;
      // Referenced by identifier only: create a stub carrying that identifier.
      EntityId pid;
      if (auto p = store_.find_by_label(EntityKind::property, ref->id_type)) {
        pid = *p;
      } else {
        pid = store_.create_entity(EntityKind::property, {{"en", ref->id_type}}, {}, {},
                                   Datatype::external_id);
      }
      EntityId stub = store_.create_entity(EntityKind::item, {{"en", ref->id}});
      store_.add_statement(stub, {pid, ExternalIdVal{ref->id_type, ref->id}, {}});
      return ItemRef{stub};
    }
  }
  return std::nullopt;
}

void Importer::add_statements(EntityId subject, const UpstreamRecord& rec,
                              const std::vector<UpstreamStatement>& stmts, bool create_stubs,
                              std::vector<std::string>& warnings) {
  for (const auto& st : stmts) {
    auto pid = local_property(rec.source, st.property, warnings);
    if (!pid) continue;
    auto value = local_value(rec.source, st.value, create_stubs);
    if (!value) {
      const auto& ref = std::get<UpstreamRef>(st.value);
      throw ImportError(rec.upstream_id + ": unresolved reference '" + ref.id + "' in " +
                        st.property);
    }
    store_.add_statement(subject, {*pid, std::move(*value), {}});
  }
}

EntityId Importer::import_entity(const SourceConnector& connector, const std::string& upstream_id,
                                 int depth) {
  if (depth < 0) throw ImportError("depth must be >= 0");
  const std::string source = connector.source();

  std::map<std::string, int> dist;
  std::map<std::string, UpstreamRecord> records;
  std::vector<std::vector<std::string>> layers;

  auto fetch_layer = [&](const std::vector<std::string>& ids) {
    std::vector<UpstreamRecord> got(ids.size());
    std::vector<std::string> errs(ids.size());
    const long n = static_cast<long>(ids.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      try {
        got[i] = connector.fetch(ids[i]);
      } catch (const std::exception& e) {
        errs[i] = e.what();
      }
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!errs[i].empty()) throw FetchError("fetch " + ids[i] + ": " + errs[i]);
      records.emplace(ids[i], std::move(got[i]));
    }
  };

  layers.push_back({upstream_id});
  dist[upstream_id] = 0;
  fetch_layer(layers.back());
  for (int d = 0; d < depth; ++d) {
    std::set<std::string> next;
    for (const auto& id : layers[d])
      for (auto& ref : upstream_refs(records.at(id)))
        if (!dist.count(ref)) next.insert(ref);
    if (next.empty()) break;
    layers.emplace_back(next.begin(), next.end());
    for (const auto& id : layers.back()) dist[id] = d + 1;
    fetch_layer(layers.back());
  }

  // Entities and identifiers first, so every reference has a target.
  std::map<std::string, EntityId> local;
  for (const auto& layer : layers) {
    for (const auto& id : layer) {
      const UpstreamRecord& rec = records.at(id);
      if (auto m = store_.get_mapping(source, id)) {
        local[id] = m->local;
        continue;
      }
      EntityId e;
      try {
        e = store_.create_entity(EntityKind::item, rec.labels, rec.descriptions, rec.aliases);
      } catch (const StoreError& err) {
        throw ImportError(source + " " + id + ": " + err.what());
      }
      add_statements(e, rec, rec.identifiers, false, warnings_);
      store_.record_mapping(e, source, id, Completeness::stub);
      local[id] = e;
    }
  }
  for (const auto& layer : layers) {
    for (const auto& id : layer) {
      if (dist.at(id) >= depth) continue;
      if (store_.get_mapping(source, id)->completeness == Completeness::full) continue;
      const UpstreamRecord& rec = records.at(id);
      add_statements(local.at(id), rec, rec.statements, false, warnings_);
      store_.record_mapping(local.at(id), source, id, Completeness::full);
    }
  }
  return local.at(upstream_id);
}

ImportReport Importer::run_datasource(const RecordParser& parser,
                                      const std::filesystem::path& input) {
  return run_text(parser, read_text(input));
}

ImportReport Importer::run_text(const RecordParser& parser, std::string_view raw) {
  ImportReport report;
  ParseOutput parsed = parser.parse(raw);
  report.errors = std::move(parsed.errors);
  const std::string source = parser.source();
  const ExternalIdRegistry& ids = store_.external_ids();

  // Validation: anything that would make a record fail half-way.
  std::set<std::string> batch_ids, batch_labels;
  for (const auto& pr : parsed.records) {
    batch_ids.insert(pr.record.upstream_id);
    for (const auto& [lang, l] : pr.record.labels)
      if (lang == "en") batch_labels.insert(l);
  }
  std::set<std::string> seen;
  std::vector<const UpstreamRecord*> valid;
  for (const auto& pr : parsed.records) {
    const UpstreamRecord& rec = pr.record;
    std::string problem;
    auto check_value = [&](const UpstreamValue& v) {
      if (const auto* x = std::get_if<ExternalIdVal>(&v)) {
        if (const auto* t = ids.find(x->type); t && !t->matches(x->value))
          problem = "'" + x->value + "' is not a valid " + x->type;
      } else if (const auto* m = std::get_if<MathVal>(&v)) {
        ParseOptions opts;
        opts.macros = &default_macro_table();
        auto r = parse_texvc(m->texvc, opts);
        if (!r.ok()) problem = "invalid formula: " + r.error().message;
      } else if (const auto* r = std::get_if<UpstreamRef>(&v)) {
        if (r->kind == UpstreamRef::Kind::upstream && !batch_ids.count(r->id) &&
            !store_.get_mapping(source, r->id))
          problem = "unresolved reference " + r->id;
        if (r->kind == UpstreamRef::Kind::label && !batch_labels.count(r->id) &&
            !store_.find_by_label(EntityKind::item, r->id))
          problem = "unknown concept '" + r->id + "'";
        if (r->kind == UpstreamRef::Kind::external)
          if (const auto* t = ids.find(r->id_type); t && !t->matches(r->id))
            problem = "'" + r->id + "' is not a valid " + r->id_type;
      }
    };
    if (rec.upstream_id.empty()) problem = "empty upstream id";
    else if (!seen.insert(rec.upstream_id).second) problem = "duplicate record in input";
    else if (rec.labels.empty()) problem = "record without label";
    else if (rec.identifiers.empty()) problem = "record without identifier";
    for (const auto& st : rec.identifiers) {
      if (!std::holds_alternative<ExternalIdVal>(st.value)) problem = "identifier is not an external id";
      check_value(st.value);
    }
    for (const auto& st : rec.statements) check_value(st.value);
    if (!problem.empty()) {
      report.errors.push_back({rec.upstream_id, problem});
      continue;
    }
    valid.push_back(&rec);
  }

  // Matching and creation.
  struct Work {
    const UpstreamRecord* rec;
    EntityId id;
    bool created;
    std::shared_ptr<const Entity> before;
  };
  std::vector<Work> work;
  for (const UpstreamRecord* rec : valid) {
    std::optional<EntityId> match;
    if (auto m = store_.get_mapping(source, rec->upstream_id)) match = m->local;
    std::vector<const ExternalIdVal*> all_ids;
    for (const auto* list : {&rec->identifiers, &rec->statements})
      for (const auto& st : *list)
        if (const auto* x = std::get_if<ExternalIdVal>(&st.value)) all_ids.push_back(x);
    for (const auto* x : all_ids) {
      auto hit = store_.find_external(x->type, x->value);
      if (!hit) continue;
      if (!match) {
        match = hit;
      } else if (*hit != *match) {
        push_unique(report.warnings, "record " + rec->upstream_id + ": " + x->type + " " + x->value +
                                         " identifies " + hit->str() + ", record matched " +
                                         match->str() + "; not merged");
      }
    }
    try {
      if (match) {
        work.push_back({rec, *match, false, store_.get(*match)});
      } else {
        EntityId id = store_.create_entity(EntityKind::item, rec->labels, rec->descriptions, rec->aliases);
        work.push_back({rec, id, true, nullptr});
      }
    } catch (const StoreError& e) {
      std::string msg = e.what();
      if (e.code() == StoreError::Code::label_collision)
        msg += "; possible duplicate under another identifier type, not merged";
      report.errors.push_back({rec->upstream_id, msg});
    }
  }
  // Identifiers before statements, so references inside the batch resolve.
  std::vector<bool> failed(work.size(), false);
  for (std::size_t i = 0; i < work.size(); ++i) {
    try {
      add_statements(work[i].id, *work[i].rec, work[i].rec->identifiers, true, report.warnings);
      if (!store_.get_mapping(source, work[i].rec->upstream_id))
        store_.record_mapping(work[i].id, source, work[i].rec->upstream_id, Completeness::stub);
    } catch (const std::exception& e) {
      report.errors.push_back({work[i].rec->upstream_id, e.what()});
      failed[i] = true;
    }
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (failed[i]) continue;
    const Work& w = work[i];
    try {
      add_statements(w.id, *w.rec, w.rec->statements, true, report.warnings);
      store_.record_mapping(w.id, source, w.rec->upstream_id, Completeness::full);
    } catch (const std::exception& e) {
      report.errors.push_back({w.rec->upstream_id, e.what()});
      continue;
    }
    if (w.created) ++report.created;
    else if (*store_.get(w.id) == *w.before) ++report.deduplicated;
    else ++report.updated;
  }
  return report;
}

ImportReport Importer::seed(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ImportError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && parser_for(entry.path())) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ImportError("no recognized fixture files in " + dir.string());
  ImportReport total;
  for (const auto& f : files) {
    ImportReport r = run_datasource(*parser_for(f), f);
    for (auto& e : r.errors) e.record = f.filename().string() + ": " + e.record;
    total += r;
  }
  return total;
}

}  // namespace mathkg
