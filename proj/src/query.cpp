#include "mathkg/query.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "json.hpp"

namespace mathkg {

namespace {

using Binding = std::map<std::string, StatementValue>;

bool value_less(const StatementValue& a, const StatementValue& b) {
  const auto* ra = std::get_if<ItemRef>(&a);
  const auto* rb = std::get_if<ItemRef>(&b);
  if (ra && rb) return ra->id < rb->id;
  if (ra != rb && (ra || rb)) return ra != nullptr;  // entities before literals
  std::string sa = render_value(a), sb = render_value(b);
  if (sa != sb) return sa < sb;
  return a < b;
}

void check_exists(const KnowledgeStore& store, EntityId id) {
  if (!store.exists(id)) throw QueryError("unknown entity " + id.str());
}

// Unifies a term with a concrete value under b. Returns false on mismatch.
bool unify_entity(const EntityTerm& t, EntityId actual, Binding& b) {
  if (const auto* id = std::get_if<EntityId>(&t)) return *id == actual;
  const std::string& name = std::get<Var>(t).name;
  auto it = b.find(name);
  if (it == b.end()) {
    b.emplace(name, ItemRef{actual});
    return true;
  }
  return it->second == StatementValue{ItemRef{actual}};
}

bool unify_value(const ValueTerm& t, const StatementValue& actual, Binding& b) {
  if (const auto* v = std::get_if<StatementValue>(&t)) return *v == actual;
  if (const auto* lit = std::get_if<Literal>(&t))
    return !std::holds_alternative<ItemRef>(actual) && render_value(actual) == lit->text;
  const std::string& name = std::get<Var>(t).name;
  auto it = b.find(name);
  if (it == b.end()) {
    b.emplace(name, actual);
    return true;
  }
  return it->second == actual;
}

}  // namespace

BindingSet select(const KnowledgeStore& store, const std::vector<TriplePattern>& patterns) {
  if (patterns.empty()) throw QueryError("empty pattern list");
  std::set<std::string> varset;
  for (const auto& p : patterns) {
    for (const EntityTerm* t : {&p.subject, &p.property}) {
      if (const auto* id = std::get_if<EntityId>(t)) check_exists(store, *id);
      else varset.insert(std::get<Var>(*t).name);
    }
    if (const auto* v = std::get_if<Var>(&p.value)) varset.insert(v->name);
    else if (const auto* sv = std::get_if<StatementValue>(&p.value))
      if (const auto* r = std::get_if<ItemRef>(sv)) check_exists(store, r->id);
  }
  if (varset.empty()) throw QueryError("query projects no variable");

  auto entities = store.snapshot();
  std::vector<Binding> current{Binding{}};
  for (const auto& p : patterns) {
    std::vector<Binding> next;
    for (const Binding& b : current) {
      for (const auto& e : entities) {
        for (const auto& st : e->statements) {
          Binding nb = b;
          if (unify_entity(p.subject, e->id, nb) && unify_entity(p.property, st.property, nb) &&
              unify_value(p.value, st.value, nb))
            next.push_back(std::move(nb));
        }
      }
    }
    current = std::move(next);
    if (current.empty()) break;
  }

  BindingSet out;
  out.vars.assign(varset.begin(), varset.end());
  for (const auto& b : current) {
    std::vector<StatementValue> row;
    for (const auto& v : out.vars) row.push_back(b.at(v));
    out.rows.push_back(std::move(row));
  }
  auto row_less = [](const std::vector<StatementValue>& a, const std::vector<StatementValue>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), value_less);
  };
  std::sort(out.rows.begin(), out.rows.end(), row_less);
  out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
  return out;
}

std::string BindingSet::to_tsv() const {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? "\t?" : "?") + vars[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += render_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string BindingSet::to_json() const {
  nlohmann::ordered_json j;
  j["vars"] = vars;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[vars[i]] = nlohmann::ordered_json::parse(value_to_json(row[i]));
    j["rows"].push_back(std::move(r));
  }
  return j.dump();
}

std::set<EntityId> transitive(const KnowledgeStore& store, EntityId start, EntityId property,
                              Direction direction) {
  check_exists(store, start);
  check_exists(store, property);
  if (property.kind != EntityKind::property) throw QueryError(property.str() + " is not a property");

  std::map<EntityId, std::vector<EntityId>> adj;
  for (const auto& e : store.snapshot()) {
    for (const auto& st : e->statements) {
      if (st.property != property) continue;
      if (const auto* r = std::get_if<ItemRef>(&st.value)) {
        if (direction == Direction::forward) adj[e->id].push_back(r->id);
        else adj[r->id].push_back(e->id);
      }
    }
  }
  std::set<EntityId> reached;
  std::deque<EntityId> queue{start};
  while (!queue.empty()) {
    EntityId cur = queue.front();
    queue.pop_front();
    auto it = adj.find(cur);
    if (it == adj.end()) continue;
    for (EntityId n : it->second)
      if (reached.insert(n).second) queue.push_back(n);
  }
  return reached;
}

EntityId resolve_entity_ref(const KnowledgeStore& store, std::string_view ref,
                            std::optional<EntityKind> kind) {
  if (ref.size() >= 2 && ref.front() == '<' && ref.back() == '>') {
    std::string_view text = ref.substr(1, ref.size() - 2);
    std::vector<EntityKind> kinds;
    if (kind) kinds = {*kind};
    else kinds = {EntityKind::item, EntityKind::property};
    std::vector<EntityId> hits;
    for (EntityKind k : kinds)
      if (auto id = store.find_by_label(k, text)) hits.push_back(*id);
    if (hits.empty())
      for (EntityKind k : kinds)
        for (EntityId id : store.find_by_label_or_alias(k, text)) hits.push_back(id);
    if (hits.empty()) throw QueryError("no entity labelled '" + std::string(text) + "'");
    if (hits.size() > 1) {
      std::string ids;
      for (auto id : hits) ids += " " + id.str();
      throw QueryError("'" + std::string(text) + "' is ambiguous:" + ids);
    }
    return hits.front();
  }
  auto id = EntityId::parse(ref);
  if (!id) throw QueryError("not an entity reference: '" + std::string(ref) + "'");
  if (kind && id->kind != *kind)
    throw QueryError(std::string(ref) + " is not " + (*kind == EntityKind::item ? "an item" : "a property"));
  check_exists(store, *id);
  return *id;
}

std::vector<TriplePattern> parse_patterns(const KnowledgeStore& store, std::string_view text) {
  enum class Tok { var, ref, literal, dot };
  struct Token {
    Tok kind;
    std::string text;
  };
  std::vector<Token> toks;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < text.size()) {
    char c = text[i];
    if (is_space(c)) {
      ++i;
    } else if (c == '.') {
      toks.push_back({Tok::dot, "."});
      ++i;
    } else if (c == '<') {
      auto end = text.find('>', i);
      if (end == std::string_view::npos) throw QueryError("unterminated '<' at offset " + std::to_string(i));
      toks.push_back({Tok::ref, std::string(text.substr(i, end - i + 1))});
      i = end + 1;
    } else if (c == '"') {
      std::string lit;
      ++i;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        lit += text[i++];
      }
      if (i >= text.size()) throw QueryError("unterminated string literal");
      ++i;
      toks.push_back({Tok::literal, lit});
    } else {
      std::size_t start = i;
      while (i < text.size() && !is_space(text[i]) && text[i] != '.') ++i;
      std::string word(text.substr(start, i - start));
      if (word[0] == '?') {
        if (word.size() == 1) throw QueryError("empty variable name");
        toks.push_back({Tok::var, word.substr(1)});
      } else {
        toks.push_back({Tok::ref, word});
      }
    }
  }

  std::vector<TriplePattern> out;
  std::size_t k = 0;
  while (k < toks.size()) {
    if (toks[k].kind == Tok::dot) {
      ++k;
      continue;
    }
    if (k + 3 > toks.size()) throw QueryError("incomplete pattern: expected subject, property and value");
    auto entity_term = [&](const Token& t, std::optional<EntityKind> kind) -> EntityTerm {
      if (t.kind == Tok::var) return Var{t.text};
      if (t.kind == Tok::ref) return resolve_entity_ref(store, t.text, kind);
      throw QueryError("unexpected " + std::string(t.kind == Tok::dot ? "'.'" : "string literal"));
    };
    TriplePattern p;
    p.subject = entity_term(toks[k], std::nullopt);
    p.property = entity_term(toks[k + 1], EntityKind::property);
    const Token& v = toks[k + 2];
    if (v.kind == Tok::var) p.value = Var{v.text};
    else if (v.kind == Tok::literal) p.value = Literal{v.text};
    else if (v.kind == Tok::ref) p.value = StatementValue{ItemRef{resolve_entity_ref(store, v.text)}};
    else throw QueryError("unexpected '.'");
    out.push_back(std::move(p));
    k += 3;
    if (k < toks.size() && toks[k].kind != Tok::dot) throw QueryError("expected '.' between patterns");
  }
  if (out.empty()) throw QueryError("empty pattern list");
  return out;
}

LinkResolver store_link_resolver(const KnowledgeStore& store, std::string base_url) {
  return [&store, base = std::move(base_url)](std::string_view key) -> std::optional<std::string> {
    if (auto id = store.find_by_label(EntityKind::item, key)) return base + id->str();
    return std::nullopt;
  };
}

}  // namespace mathkg
