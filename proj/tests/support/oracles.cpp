#include "oracles.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#ifndef MATHKG_DATA_DIR
#error "MATHKG_DATA_DIR must be defined"
#endif

namespace mathkg::testing {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

void collect_sexprs(const MathNode& n, std::vector<std::string>& out) {
  out.push_back(to_sexpr(n));
  if (const auto* r = n.as<Row>()) {
    for (const auto& c : r->children) collect_sexprs(c, out);
  } else if (const auto* c = n.as<Command>()) {
    for (const auto& a : c->args) collect_sexprs(a, out);
  } else if (const auto* s = n.as<Script>()) {
    collect_sexprs(*s->base, out);
    if (s->sub) collect_sexprs(**s->sub, out);
    if (s->sup) collect_sexprs(**s->sup, out);
  } else if (const auto* m = n.as<SemanticMacro>()) {
    collect_sexprs(*m->rendered, out);
  } else if (const auto* e = n.as<ChemEquation>()) {
    for (const auto& c : e->children) collect_sexprs(c, out);
  }
}

struct Triple {
  EntityId s;
  EntityId p;
  StatementValue v;
};

}  // namespace

std::filesystem::path data_dir() { return MATHKG_DATA_DIR; }

std::map<std::string, int> fixture_distances(const std::filesystem::path& jsonl,
                                             const std::string& root) {
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& line : read_lines(jsonl)) {
    if (trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line);
    auto& out = edges[j.at("id").get<std::string>()];
    for (const auto& c : j.value("claims", nlohmann::json::array())) {
      const auto& v = c.at("value");
      if (v.at("type") == "item") out.push_back(v.at("id").get<std::string>());
    }
  }
  // Bellman-Ford style relaxation on unit weights.
  std::map<std::string, int> dist{{root, 0}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [from, tos] : edges) {
      auto f = dist.find(from);
      if (f == dist.end()) continue;
      for (const auto& to : tos) {
        auto t = dist.find(to);
        if (t == dist.end() || t->second > f->second + 1) {
          dist[to] = f->second + 1;
          changed = true;
        }
      }
    }
  }
  return dist;
}

DepthExpectation expected_depth_sets(const std::map<std::string, int>& dist, int depth) {
  DepthExpectation e;
  for (const auto& [id, d] : dist) {
    if (d < depth) e.full.insert(id);
    else if (d == depth) e.stub.insert(id);
  }
  return e;
}

std::map<std::string, std::set<std::string>> dlmf_uses(const std::filesystem::path& tsv,
                                                        const std::filesystem::path& macros_tsv) {
  std::map<std::string, std::string> macro_concept;
  for (const auto& line : read_lines(macros_tsv)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    macro_concept["\\" + f.at(0)] = f.at(2);
  }
  std::map<std::string, std::set<std::string>> out;
  for (const auto& line : read_lines(tsv)) {
    if (trim(line).empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    auto& uses = out[f.at(0)];
    const std::string& tex = f.at(1);
    for (const auto& [macro, key] : macro_concept) {
      for (std::size_t pos = tex.find(macro); pos != std::string::npos;
           pos = tex.find(macro, pos + 1)) {
        std::size_t end = pos + macro.size();
        if (end == tex.size() || !std::isalpha(static_cast<unsigned char>(tex[end]))) uses.insert(key);
      }
    }
    if (f.size() > 2)
      for (const auto& u : split(f[2], ','))
        if (!trim(u).empty()) uses.insert(trim(u));
  }
  return out;
}

std::set<std::string> dlmf_dependents(const std::map<std::string, std::set<std::string>>& uses,
                                      const std::string& target) {
  std::set<std::string> reach;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [row, targets] : uses) {
      if (reach.count(row)) continue;
      for (const auto& t : targets) {
        if (t == target || reach.count(t)) {
          reach.insert(row);
          changed = true;
          break;
        }
      }
    }
  }
  return reach;
}

std::set<std::string> brute_force_select(const KnowledgeStore& store,
                                         const std::vector<TriplePattern>& patterns) {
  std::vector<Triple> triples;
  for (const auto& e : store.snapshot())
    for (const auto& st : e->statements) triples.push_back({e->id, st.property, st.value});

  auto entity_matches = [](const EntityTerm& t, EntityId id) {
    const auto* fixed = std::get_if<EntityId>(&t);
    return !fixed || *fixed == id;
  };
  auto value_matches = [](const ValueTerm& t, const StatementValue& v) {
    if (const auto* fixed = std::get_if<StatementValue>(&t)) return *fixed == v;
    if (const auto* lit = std::get_if<Literal>(&t))
      return !std::holds_alternative<ItemRef>(v) && render_value(v) == lit->text;
    return true;
  };

  std::vector<std::vector<const Triple*>> matches(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i)
    for (const auto& t : triples)
      if (entity_matches(patterns[i].subject, t.s) && entity_matches(patterns[i].property, t.p) &&
          value_matches(patterns[i].value, t.v))
        matches[i].push_back(&t);

  std::set<std::string> rows;
  std::vector<std::size_t> pick(patterns.size(), 0);
  for (const auto& m : matches)
    if (m.empty()) return rows;
  while (true) {
    std::map<std::string, std::string> binding;
    bool ok = true;
    auto bind = [&](const std::string& var, const std::string& val) {
      auto [it, fresh] = binding.emplace(var, val);
      if (!fresh && it->second != val) ok = false;
    };
    for (std::size_t i = 0; i < patterns.size() && ok; ++i) {
      const Triple& t = *matches[i][pick[i]];
      // Entities and values are compared by a typed rendering so an item
      // never unifies with a string that happens to read "Q1".
      if (const auto* v = std::get_if<Var>(&patterns[i].subject)) bind(v->name, "item:" + t.s.str());
      if (const auto* v = std::get_if<Var>(&patterns[i].property)) bind(v->name, "item:" + t.p.str());
      if (const auto* v = std::get_if<Var>(&patterns[i].value)) {
        std::string typed = std::holds_alternative<ItemRef>(t.v)
                                ? "item:" + std::get<ItemRef>(t.v).id.str()
                                : std::to_string(t.v.index()) + ":" + render_value(t.v);
        bind(v->name, typed);
      }
    }
    if (ok) {
      std::string row;
      for (const auto& [k, v] : binding) {
        if (!row.empty()) row += ";";
        row += "?" + k + "=" + v;
      }
      rows.insert(row);
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == matches[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return rows;
}

std::set<EntityId> fixpoint_closure(const KnowledgeStore& store, EntityId start, EntityId property,
                                    bool inverse) {
  std::vector<std::pair<EntityId, EntityId>> edges;
  for (const auto& e : store.snapshot())
    for (const auto& st : e->statements)
      if (st.property == property)
        if (const auto* r = std::get_if<ItemRef>(&st.value))
          edges.emplace_back(inverse ? r->id : e->id, inverse ? e->id : r->id);
  std::set<EntityId> reach;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [from, to] : edges)
      if ((from == start || reach.count(from)) && reach.insert(to).second) changed = true;
  }
  return reach;
}

bool sexpr_contains(const MathNode& doc, const MathNode& query) {
  std::vector<std::string> all;
  collect_sexprs(doc, all);
  const std::string q = to_sexpr(query);
  for (const auto& s : all)
    if (s == q) return true;
  return false;
}

}  // namespace mathkg::testing
