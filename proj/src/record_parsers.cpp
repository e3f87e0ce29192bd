#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mathkg/importer.hpp"
#include "mathkg/macros.hpp"
#include "mathkg/texvc.hpp"

namespace mathkg {

namespace {

using json = nlohmann::json;

constexpr std::pair<Category, std::string_view> kCategoryNames[] = {
    {Category::publication, "publication"}, {Category::author, "author"},
    {Category::journal, "journal"},         {Category::software, "software"},
    {Category::dataset, "dataset"},         {Category::formula, "formula"},
    {Category::package, "package"},         {Category::collection, "collection"},
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    std::string item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view raw, Fn&& fn) {
  std::size_t n = 0, pos = 0;
  while (pos < raw.size()) {
    auto end = raw.find('\n', pos);
    if (end == std::string_view::npos) end = raw.size();
    ++n;
    std::string_view line = raw.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(n, line);
    pos = end + 1;
  }
}

LangMap lang_map(const json& j, const char* key) {
  LangMap out;
  if (j.contains(key))
    for (const auto& [lang, v] : j.at(key).items()) out[lang] = v.get<std::string>();
  return out;
}

UpstreamValue wikidata_value(const json& v) {
  std::string type = v.at("type").get<std::string>();
  if (type == "item") return UpstreamRef{UpstreamRef::Kind::upstream, v.at("id").get<std::string>(), ""};
  if (type == "external-id")
    return ExternalIdVal{v.at("id_type").get<std::string>(), v.at("value").get<std::string>()};
  std::string value = v.at("value").get<std::string>();
  if (type == "string") return StringVal{value};
  if (type == "math") return MathVal{value};
  if (type == "url") return UrlVal{value};
  if (type == "time") return TimeVal{value};
  throw std::runtime_error("unknown value type '" + type + "'");
}

bool is_dlmf_id(std::string_view s) {
  const ExternalIdType* t = default_external_ids().find("DLMF ID");
  return t && t->matches(s);
}

}  // namespace

std::string_view to_string(Category c) {
  for (const auto& [cat, name] : kCategoryNames)
    if (cat == c) return name;
  return "?";
}

std::optional<Category> category_from_string(std::string_view s) {
  for (const auto& [cat, name] : kCategoryNames)
    if (name == s) return cat;
  return std::nullopt;
}

ParseOutput WikidataJsonParser::parse(std::string_view raw) const {
  ParseOutput out;
  for_each_line(raw, [&](std::size_t n, std::string_view line) {
    if (trim(line).empty()) return;
    std::string where = "line " + std::to_string(n);
    try {
      json j = json::parse(line);
      UpstreamRecord rec;
      rec.source = source();
      rec.upstream_id = j.at("id").get<std::string>();
      if (rec.upstream_id.empty()) throw std::runtime_error("empty id");
      where = rec.upstream_id;
      rec.labels = lang_map(j, "labels");
      rec.descriptions = lang_map(j, "descriptions");
      if (j.contains("aliases"))
        for (const auto& [lang, v] : j.at("aliases").items())
          rec.aliases[lang] = v.get<std::vector<std::string>>();
      rec.identifiers.push_back({"id", ExternalIdVal{"wikidata", rec.upstream_id}});
      if (j.contains("claims"))
        for (const auto& c : j.at("claims"))
          rec.statements.push_back({c.at("property").get<std::string>(), wikidata_value(c.at("value"))});
      Category cat = Category::dataset;
      if (j.contains("category")) {
        auto c = category_from_string(j.at("category").get<std::string>());
        if (!c) throw std::runtime_error("unknown category " + j.at("category").dump());
        cat = *c;
      }
      out.records.push_back({cat, std::move(rec)});
    } catch (const std::exception& e) {
      out.errors.push_back({where, e.what()});
    }
  });
  return out;
}

ParseOutput CranDescriptionParser::parse(std::string_view raw) const {
  ParseOutput out;
  std::vector<std::pair<std::string, std::string>> fields;
  std::size_t stanza_line = 0;

  auto flush = [&]() {
    if (fields.empty()) return;
    std::string where = "line " + std::to_string(stanza_line);
    try {
      UpstreamRecord rec;
      rec.source = source();
      for (const auto& [key, value] : fields) {
        if (key == "Package") {
          rec.upstream_id = value;
        } else if (key == "Title") {
          rec.descriptions["en"] = value;
        } else if (key == "Depends" || key == "Imports") {
          for (std::string dep : split_list(value)) {
            dep = trim(dep.substr(0, dep.find('(')));
            if (dep.empty() || dep == "R") continue;
            rec.statements.push_back({key, UpstreamRef{UpstreamRef::Kind::external, dep, "CRAN Project"}});
          }
        } else if (key == "URL") {
          auto urls = split_list(value);
          if (!urls.empty()) rec.statements.push_back({key, UrlVal{urls.front()}});
        } else if (key != "Description") {
          rec.statements.push_back({key, StringVal{value}});
        }
      }
      if (rec.upstream_id.empty()) throw std::runtime_error("stanza without Package field");
      where = rec.upstream_id;
      rec.labels["en"] = rec.upstream_id;
      rec.identifiers.push_back({"Package", ExternalIdVal{"CRAN Project", rec.upstream_id}});
      out.records.push_back({Category::package, std::move(rec)});
    } catch (const std::exception& e) {
      out.errors.push_back({where, e.what()});
    }
    fields.clear();
  };

  bool bad_stanza = false;
  for_each_line(raw, [&](std::size_t n, std::string_view line) {
    if (trim(line).empty()) {
      if (!bad_stanza) flush();
      fields.clear();
      bad_stanza = false;
      return;
    }
    if (bad_stanza) return;
    if (fields.empty()) stanza_line = n;
    if (line.front() == ' ' || line.front() == '\t') {
      if (fields.empty()) {
        out.errors.push_back({"line " + std::to_string(n), "continuation line without a field"});
        bad_stanza = true;
        return;
      }
      fields.back().second += " " + trim(line);
      return;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      out.errors.push_back({"line " + std::to_string(n), "expected 'Field: value'"});
      bad_stanza = true;
      fields.clear();
      return;
    }
    fields.emplace_back(trim(line.substr(0, colon)), trim(line.substr(colon + 1)));
  });
  if (!bad_stanza) flush();
  return out;
}

ParseOutput DlmfTsvParser::parse(std::string_view raw) const {
  ParseOutput out;
  for_each_line(raw, [&](std::size_t n, std::string_view line) {
    if (trim(line).empty() || line.front() == '#') return;
    std::string where = "line " + std::to_string(n);
    try {
      std::vector<std::string> cols;
      std::size_t pos = 0;
      while (true) {
        auto tab = line.find('\t', pos);
        cols.emplace_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
        if (tab == std::string_view::npos) break;
        pos = tab + 1;
      }
      if (cols.size() < 2 || cols.size() > 3) throw std::runtime_error("expected 2 or 3 columns");
      const std::string& id = cols[0];
      if (!is_dlmf_id(id)) throw std::runtime_error("'" + id + "' is not a valid DLMF ID");
      where = id;
      UpstreamRecord rec;
      rec.source = source();
      rec.upstream_id = id;
      rec.labels["en"] = "DLMF " + id;
      rec.descriptions["en"] = "formula " + id + " of the Digital Library of Mathematical Functions";
      rec.identifiers.push_back({"id", ExternalIdVal{"DLMF ID", id}});
      rec.statements.push_back({"formula", MathVal{cols[1]}});

      std::vector<std::string> uses = cols.size() == 3 ? split_list(cols[2]) : std::vector<std::string>{};
      try {
        for (const auto& key : extract_concepts(expand_semantics(cols[1]))) uses.push_back(key);
      } catch (const ParseError& e) {
        throw std::runtime_error("formula does not parse: " + e.diagnostic().message);
      }
      std::set<std::string> seen;
      for (const auto& u : uses) {
        if (!seen.insert(u).second) continue;
        UpstreamRef ref = is_dlmf_id(u) ? UpstreamRef{UpstreamRef::Kind::external, u, "DLMF ID"}
                                        : UpstreamRef{UpstreamRef::Kind::label, u, ""};
        rec.statements.push_back({"uses", ref});
      }
      out.records.push_back({Category::formula, std::move(rec)});
    } catch (const std::exception& e) {
      out.errors.push_back({where, e.what()});
    }
  });
  return out;
}

ParseOutput BiblioJsonParser::parse(std::string_view raw) const {
  ParseOutput out;
  std::set<std::string> emitted;
  std::vector<ParsedRecord> authors, journals, works;

  auto opt_string = [](const json& j, const char* key) -> std::string {
    return j.contains(key) && j.at(key).is_string() ? j.at(key).get<std::string>() : std::string();
  };

  for_each_line(raw, [&](std::size_t n, std::string_view line) {
    if (trim(line).empty()) return;
    std::string where = "line " + std::to_string(n);
    try {
      json j = json::parse(line);
      UpstreamRecord pub;
      pub.source = source();
      pub.upstream_id = opt_string(j, "doi");
      if (pub.upstream_id.empty()) throw std::runtime_error("record without doi");
      where = pub.upstream_id;
      std::string title = opt_string(j, "title");
      if (title.empty()) throw std::runtime_error("record without title");
      pub.labels["en"] = title;
      pub.identifiers.push_back({"doi", ExternalIdVal{"DOI", pub.upstream_id}});

      std::vector<ParsedRecord> new_authors, new_journals;
      for (const auto& a : j.value("authors", json::array())) {
        std::string orcid = opt_string(a, "orcid");
        std::string name = opt_string(a, "name");
        if (orcid.empty() || name.empty()) throw std::runtime_error("author needs name and orcid");
        pub.statements.push_back({"author", UpstreamRef{UpstreamRef::Kind::external, orcid, "ORCID iD"}});
        if (emitted.count("orcid:" + orcid)) continue;
        UpstreamRecord rec;
        rec.source = source();
        rec.upstream_id = orcid;
        rec.labels["en"] = name;
        rec.identifiers.push_back({"orcid", ExternalIdVal{"ORCID iD", orcid}});
        if (std::string z = opt_string(a, "zbmath_author"); !z.empty())
          rec.statements.push_back({"zbmath_author", ExternalIdVal{"zbMATH author ID", z}});
        new_authors.push_back({Category::author, std::move(rec)});
      }
      if (j.contains("journal")) {
        const json& jr = j.at("journal");
        std::string issn = opt_string(jr, "issn");
        std::string jt = opt_string(jr, "title");
        if (issn.empty() || jt.empty()) throw std::runtime_error("journal needs title and issn");
        pub.statements.push_back({"journal", UpstreamRef{UpstreamRef::Kind::external, issn, "ISSN"}});
        if (!emitted.count("issn:" + issn)) {
          UpstreamRecord rec;
          rec.source = source();
          rec.upstream_id = issn;
          rec.labels["en"] = jt;
          rec.identifiers.push_back({"issn", ExternalIdVal{"ISSN", issn}});
          new_journals.push_back({Category::journal, std::move(rec)});
        }
      }
      for (const char* key : {"zbmath", "arxiv", "zenodo"}) {
        static const std::map<std::string, std::string> types = {
            {"zbmath", "zbMATH document ID"}, {"arxiv", "arXiv ID"}, {"zenodo", "Zenodo ID"}};
        if (std::string v = opt_string(j, key); !v.empty())
          pub.statements.push_back({key, ExternalIdVal{types.at(key), v}});
      }
      for (const auto& m : j.value("msc", json::array()))
        pub.statements.push_back({"msc", ExternalIdVal{"MSC ID", m.get<std::string>()}});
      if (std::string v = opt_string(j, "published"); !v.empty())
        pub.statements.push_back({"published", TimeVal{v}});
      if (std::string v = opt_string(j, "url"); !v.empty())
        pub.statements.push_back({"url", UrlVal{v}});
      Category cat = Category::publication;
      if (std::string c = opt_string(j, "category"); !c.empty()) {
        auto parsed = category_from_string(c);
        if (!parsed) throw std::runtime_error("unknown category '" + c + "'");
        cat = *parsed;
        pub.statements.push_back({"category", StringVal{c}});
      }

      // Commit only once the whole line parsed.
      for (auto& a : new_authors) {
        emitted.insert("orcid:" + a.record.upstream_id);
        authors.push_back(std::move(a));
      }
      for (auto& jr : new_journals) {
        emitted.insert("issn:" + jr.record.upstream_id);
        journals.push_back(std::move(jr));
      }
      works.push_back({cat, std::move(pub)});
    } catch (const std::exception& e) {
      out.errors.push_back({where, e.what()});
    }
  });
  for (auto* group : {&authors, &journals, &works})
    for (auto& r : *group) out.records.push_back(std::move(r));
  return out;
}

std::unique_ptr<RecordParser> parser_for(const std::filesystem::path& file) {
  std::string name = file.filename().string();
  auto ends_with = [&](std::string_view suffix) {
    return name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".wikidata.jsonl")) return std::make_unique<WikidataJsonParser>();
  if (ends_with(".dcf")) return std::make_unique<CranDescriptionParser>();
  if (ends_with(".dlmf.tsv")) return std::make_unique<DlmfTsvParser>();
  if (ends_with(".biblio.jsonl")) return std::make_unique<BiblioJsonParser>();
  return nullptr;
}

}  // namespace mathkg
