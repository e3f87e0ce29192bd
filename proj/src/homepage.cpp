#include <algorithm>

#include "json.hpp"
#include "mathkg/query.hpp"
#include "mathkg/texvc.hpp"

namespace mathkg {

HomepageDoc formula_homepage(const KnowledgeStore& store, EntityId item,
                             const HomepageOptions& opts) {
  auto e = store.get(item);
  if (!e) throw QueryError("unknown entity " + item.str());
  const MacroTable& macros = opts.macros ? *opts.macros : default_macro_table();

  HomepageDoc doc;
  doc.item = item;
  doc.title = e->label().empty() ? item.str() : e->label();
  for (const auto& st : e->statements) {
    if (const auto* m = std::get_if<MathVal>(&st.value)) {
      doc.texvc = m->texvc;
      break;
    }
  }
  if (doc.texvc.empty()) throw QueryError(item.str() + " has no formula statement");

  EmitOptions eo;
  eo.display = Display::block;
  eo.resolve_links = true;
  eo.link_resolver = store_link_resolver(store, opts.base_url);
  eo.macros = &macros;
  eo.tex_source = doc.texvc;
  doc.mathml = emit_mathml(expand_semantics(doc.texvc, macros), eo);

  auto uses = store.find_by_label(EntityKind::property, kUsesLabel);
  const ExternalIdRegistry& ids = store.external_ids();
  for (const auto& st : e->statements) {
    if (uses && st.property == *uses) {
      if (const auto* r = std::get_if<ItemRef>(&st.value)) {
        auto target = store.get(r->id);
        LinkedConcept c{r->id, target->label(), ""};
        if (const MacroDef* def = macros.find_by_concept(c.label); def && !def->fallback_url.empty()) {
          c.url = def->fallback_url;
        } else {
          for (const auto& ts : target->statements) {
            const auto* x = std::get_if<ExternalIdVal>(&ts.value);
            if (!x) continue;
            if (const auto* t = ids.find(x->type)) {
              c.url = t->url_for(x->value);
              break;
            }
          }
          if (c.url.empty()) c.url = opts.base_url + r->id.str();
        }
        doc.linked_concepts.push_back(std::move(c));
      }
    }
    if (const auto* x = std::get_if<ExternalIdVal>(&st.value)) {
      const auto* t = ids.find(x->type);
      doc.external_ids.push_back({x->type, x->value, t ? t->url_for(x->value) : std::string()});
    }
  }
  if (uses) {
    for (const auto& other : store.snapshot())
      for (const auto& st : other->statements)
        if (st.property == *uses && st.value == StatementValue{ItemRef{item}}) {
          doc.backlinks.push_back(other->id);
          break;
        }
    std::sort(doc.backlinks.begin(), doc.backlinks.end());
  }
  return doc;
}

std::string HomepageDoc::to_html() const {
  std::string t = xml_escape(title);
  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" + t +
         "</title>\n</head>\n<body>\n";
  out += "<h1>" + t + "</h1>\n<p class=\"item\">" + item.str() + "</p>\n";
  out += "<div class=\"formula\">" + mathml + "</div>\n";
  out += "<pre class=\"texvc\">" + xml_escape(texvc) + "</pre>\n";

  out += "<h2>Linked concepts</h2>\n";
  if (linked_concepts.empty()) {
    out += "<p>None.</p>\n";
  } else {
    out += "<ul class=\"concepts\">\n";
    for (const auto& c : linked_concepts)
      out += "<li><a href=\"" + xml_escape(c.url) + "\">" + xml_escape(c.label) + "</a> (" +
             c.id.str() + ")</li>\n";
    out += "</ul>\n";
  }
  out += "<h2>Identifiers</h2>\n";
  if (external_ids.empty()) {
    out += "<p>None.</p>\n";
  } else {
    out += "<ul class=\"identifiers\">\n";
    for (const auto& x : external_ids) {
      out += "<li>" + xml_escape(x.type) + ": ";
      if (x.url.empty()) out += xml_escape(x.value);
      else out += "<a href=\"" + xml_escape(x.url) + "\">" + xml_escape(x.value) + "</a>";
      out += "</li>\n";
    }
    out += "</ul>\n";
  }
  out += "<h2>Used by</h2>\n";
  if (backlinks.empty()) {
    out += "<p>None.</p>\n";
  } else {
    out += "<ul class=\"backlinks\">\n";
    for (const auto& b : backlinks) out += "<li>" + b.str() + "</li>\n";
    out += "</ul>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

std::string HomepageDoc::to_json() const {
  nlohmann::ordered_json j;
  j["item"] = item.str();
  j["title"] = title;
  j["texvc"] = texvc;
  j["mathml"] = mathml;
  j["linked_concepts"] = nlohmann::ordered_json::array();
  for (const auto& c : linked_concepts)
    j["linked_concepts"].push_back({{"id", c.id.str()}, {"label", c.label}, {"url", c.url}});
  j["external_ids"] = nlohmann::ordered_json::array();
  for (const auto& x : external_ids)
    j["external_ids"].push_back({{"type", x.type}, {"value", x.value}, {"url", x.url}});
  j["backlinks"] = nlohmann::ordered_json::array();
  for (const auto& b : backlinks) j["backlinks"].push_back(b.str());
  return j.dump(2) + "\n";
}

}  // namespace mathkg
