#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mathkg/store.hpp"

namespace mathkg {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void corrupt(const std::string& what) {
  throw StoreError(StoreError::Code::corrupt_file, what);
}

EntityId id_from_json(const json& j) {
  if (!j.is_string()) corrupt("entity id must be a string");
  auto id = EntityId::parse(j.get<std::string>());
  if (!id) corrupt("bad entity id '" + j.get<std::string>() + "'");
  return *id;
}

json value_json(const StatementValue& v) {
  json j;
  j["type"] = std::string(to_string(datatype_of(v)));
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ItemRef>) {
          j["id"] = x.id.str();
        } else if constexpr (std::is_same_v<T, ExternalIdVal>) {
          j["id_type"] = x.type;
          j["value"] = x.value;
        } else {
          j["value"] = render_value(v);
        }
      },
      v);
  return j;
}

StatementValue value_from(const json& j) {
  if (!j.is_object() || !j.contains("type")) corrupt("statement value needs a type");
  auto dt = datatype_from_string(j.at("type").get<std::string>());
  if (!dt) corrupt("unknown value type " + j.at("type").dump());
  auto str = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
      corrupt(std::string("value field '") + key + "' missing");
    return j.at(key).get<std::string>();
  };
  switch (*dt) {
    case Datatype::item: return ItemRef{id_from_json(j.at("id"))};
    case Datatype::string: return StringVal{str("value")};
    case Datatype::external_id: return ExternalIdVal{str("id_type"), str("value")};
    case Datatype::math: return MathVal{str("value")};
    case Datatype::url: return UrlVal{str("value")};
    case Datatype::time: return TimeVal{str("value")};
  }
  corrupt("unreachable");
}

json entity_json(const Entity& e) {
  json j;
  j["id"] = e.id.str();
  j["kind"] = e.id.kind == EntityKind::item ? "item" : "property";
  j["labels"] = json::object();
  for (const auto& [lang, s] : e.labels) j["labels"][lang] = s;
  j["descriptions"] = json::object();
  for (const auto& [lang, s] : e.descriptions) j["descriptions"][lang] = s;
  j["aliases"] = json::object();
  for (const auto& [lang, list] : e.aliases) j["aliases"][lang] = list;
  j["statements"] = json::array();
  for (const auto& st : e.statements) {
    json s;
    s["property"] = st.property.str();
    s["value"] = value_json(st.value);
    if (!st.qualifiers.empty()) {
      s["qualifiers"] = json::array();
      for (const auto& q : st.qualifiers)
        s["qualifiers"].push_back({{"property", q.property.str()}, {"value", value_json(q.value)}});
    }
    j["statements"].push_back(std::move(s));
  }
  if (e.datatype) j["datatype"] = std::string(to_string(*e.datatype));
  return j;
}

LangMap lang_map(const json& j, const char* key) {
  LangMap out;
  if (!j.contains(key)) return out;
  for (const auto& [lang, v] : j.at(key).items()) out[lang] = v.get<std::string>();
  return out;
}

Entity entity_from(const json& j) {
  Entity e;
  e.id = id_from_json(j.at("id"));
  std::string kind = j.at("kind").get<std::string>();
  if (kind != (e.id.kind == EntityKind::item ? "item" : "property"))
    corrupt(e.id.str() + ": kind does not match id");
  e.labels = lang_map(j, "labels");
  e.descriptions = lang_map(j, "descriptions");
  if (j.contains("aliases"))
    for (const auto& [lang, v] : j.at("aliases").items())
      e.aliases[lang] = v.get<std::vector<std::string>>();
  if (j.contains("statements")) {
    for (const auto& s : j.at("statements")) {
      Statement st{id_from_json(s.at("property")), value_from(s.at("value")), {}};
      if (s.contains("qualifiers"))
        for (const auto& q : s.at("qualifiers"))
          st.qualifiers.push_back({id_from_json(q.at("property")), value_from(q.at("value"))});
      e.statements.push_back(std::move(st));
    }
  }
  if (j.contains("datatype")) {
    auto dt = datatype_from_string(j.at("datatype").get<std::string>());
    if (!dt) corrupt(e.id.str() + ": unknown datatype");
    e.datatype = *dt;
  }
  return e;
}

json parse_line(std::string_view line, const std::string& where) {
  try {
    return json::parse(line);
  } catch (const json::exception& ex) {
    corrupt(where + ": " + ex.what());
  }
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) corrupt("cannot open " + path.string());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::string where = path.filename().string() + ":" + std::to_string(n);
    try {
      fn(parse_line(line, where));
    } catch (const json::exception& ex) {
      corrupt(where + ": " + ex.what());
    }
  }
}

}  // namespace

std::string value_to_json(const StatementValue& v) { return value_json(v).dump(); }

std::string entity_to_json(const Entity& e) { return entity_json(e).dump(); }

Entity entity_from_json(std::string_view line) {
  try {
    return entity_from(parse_line(line, "entity"));
  } catch (const json::exception& ex) {
    corrupt(std::string("entity: ") + ex.what());
  }
}

void export_store(const KnowledgeStore& store, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "entities.jsonl", std::ios::binary | std::ios::trunc);
    for (const auto& e : store.snapshot()) out << entity_to_json(*e) << '\n';
    if (!out) corrupt("cannot write " + (dir / "entities.jsonl").string());
  }
  std::ofstream out(dir / "mappings.jsonl", std::ios::binary | std::ios::trunc);
  for (const auto& m : store.mappings()) {
    json j;
    j["local"] = m.local.str();
    j["source"] = m.source;
    j["upstream"] = m.upstream;
    j["completeness"] = std::string(to_string(m.completeness));
    out << j.dump() << '\n';
  }
  if (!out) corrupt("cannot write " + (dir / "mappings.jsonl").string());
}

void import_store(KnowledgeStore& store, const std::filesystem::path& dir) {
  std::vector<Entity> entities;
  std::vector<IdMapping> mappings;
  if (std::filesystem::exists(dir / "entities.jsonl"))
    for_each_line(dir / "entities.jsonl", [&](const json& j) { entities.push_back(entity_from(j)); });
  if (std::filesystem::exists(dir / "mappings.jsonl")) {
    for_each_line(dir / "mappings.jsonl", [&](const json& j) {
      IdMapping m;
      m.local = id_from_json(j.at("local"));
      m.source = j.at("source").get<std::string>();
      m.upstream = j.at("upstream").get<std::string>();
      std::string c = j.at("completeness").get<std::string>();
      if (c != "full" && c != "stub") corrupt("bad completeness '" + c + "'");
      m.completeness = c == "full" ? Completeness::full : Completeness::stub;
      mappings.push_back(std::move(m));
    });
  }
  store.restore(std::move(entities), std::move(mappings));
}

}  // namespace mathkg
