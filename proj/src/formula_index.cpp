#include "mathkg/formula_index.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "mathkg/kernels.hpp"
#include "mathkg/macros.hpp"
#include "mathkg/texvc.hpp"

namespace mathkg {

namespace {

using json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
  if (s.size() != 16) throw std::runtime_error("bad digest '" + s + "'");
  return std::stoull(s, nullptr, 16);
}

void collect_tokens(const MathNode& root, std::map<std::string, std::size_t>& bag) {
  visit_preorder(root, [&](const MathNode& n) {
    if (const auto* id = n.as<Identifier>()) ++bag[id->name];
    else if (const auto* num = n.as<Number>()) ++bag[num->literal];
    else if (const auto* op = n.as<Operator>()) ++bag[op->symbol];
  });
}

bool hit_before(const SearchHit& a, const SearchHit& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.item < b.item;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

MathNode parse_for_index(std::string_view texvc) {
  ParseOptions opts;
  opts.macros = &default_macro_table();
  return normalize(parse_or_throw(texvc, opts));
}

std::vector<std::uint64_t> subtree_hashes(const MathNode& normalized) {
  std::vector<std::uint64_t> out;
  visit_preorder(normalized, [&](const MathNode& n) { out.push_back(fnv1a64(to_sexpr(n))); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool contains_subtree(const MathNode& doc, const MathNode& query) {
  bool found = false;
  visit_preorder(doc, [&](const MathNode& n) {
    if (!found && n == query) found = true;
  });
  return found;
}

FormulaIndexEntry make_index_entry(EntityId item, std::string_view texvc) {
  FormulaIndexEntry e;
  e.item = item;
  e.texvc = std::string(texvc);
  auto tree = std::make_shared<const MathNode>(parse_for_index(texvc));
  e.normalized_hash = fnv1a64(to_sexpr(*tree));
  e.subtree_hashes = subtree_hashes(*tree);
  collect_tokens(*tree, e.token_bag);
  e.size = node_count(*tree);
  e.tree = std::move(tree);
  return e;
}

std::string FormulaIndexEntry::to_json() const {
  json j;
  j["item"] = item.str();
  j["texvc"] = texvc;
  j["normalized_hash"] = hex64(normalized_hash);
  j["size"] = size;
  j["subtree_hashes"] = json::array();
  for (auto h : subtree_hashes) j["subtree_hashes"].push_back(hex64(h));
  j["token_bag"] = json::object();
  for (const auto& [tok, n] : token_bag) j["token_bag"][tok] = n;
  return j.dump();
}

void FormulaIndex::index_formula(EntityId item, std::string_view texvc) {
  insert(make_index_entry(item, texvc));
}

void FormulaIndex::insert(FormulaIndexEntry entry) {
  remove(entry.item);
  for (auto h : entry.subtree_hashes) postings_[h].insert(entry.item);
  EntityId id = entry.item;
  entries_.emplace(id, std::move(entry));
}

bool FormulaIndex::remove(EntityId item) {
  auto it = entries_.find(item);
  if (it == entries_.end()) return false;
  for (auto h : it->second.subtree_hashes) {
    auto p = postings_.find(h);
    p->second.erase(item);
    if (p->second.empty()) postings_.erase(p);
  }
  entries_.erase(it);
  return true;
}

std::vector<SearchHit> FormulaIndex::search(std::string_view query, SearchMode mode,
                                            std::size_t limit) const {
  if (limit == 0) throw std::invalid_argument("limit must be at least 1");
  return search_tree(parse_for_index(query), mode, limit);
}

std::vector<SearchHit> FormulaIndex::search_tree(const MathNode& q, SearchMode mode,
                                                 std::size_t limit) const {
  if (limit == 0) throw std::invalid_argument("limit must be at least 1");
  const std::uint64_t qh = fnv1a64(to_sexpr(q));
  const double qsize = static_cast<double>(node_count(q));
  std::vector<SearchHit> hits;
  auto p = postings_.find(qh);
  if (p != postings_.end()) {
    for (EntityId id : p->second) {
      const FormulaIndexEntry& e = entries_.at(id);
      if (mode == SearchMode::exact) {
        if (e.normalized_hash == qh && *e.tree == q) hits.push_back({id, 1.0});
      } else if (contains_subtree(*e.tree, q)) {
        hits.push_back({id, qsize / static_cast<double>(e.size)});
      }
    }
  }
  std::sort(hits.begin(), hits.end(), hit_before);
  if (hits.size() > limit) hits.resize(limit);
  return hits;
}

const FormulaIndexEntry* FormulaIndex::find(EntityId item) const {
  auto it = entries_.find(item);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const FormulaIndexEntry*> FormulaIndex::entries() const {
  std::vector<const FormulaIndexEntry*> out;
  out.reserve(entries_.size());
  for (const auto& [_, e] : entries_) out.push_back(&e);
  return out;
}

FormulaIndex FormulaIndex::rebuild(const KnowledgeStore& store) {
  kernels::FormulaList formulas;
  for (const auto& e : store.snapshot()) {
    if (e->id.kind != EntityKind::item) continue;
    for (const auto& st : e->statements) {
      if (const auto* m = std::get_if<MathVal>(&st.value)) {
        formulas.emplace_back(e->id, m->texvc);
        break;
      }
    }
  }
  FormulaIndex index;
  for (auto& entry : kernels::build_entries_parallel(formulas)) index.insert(std::move(entry));
  return index;
}

std::string FormulaIndex::to_jsonl() const {
  std::string out;
  for (const auto& [_, e] : entries_) out += e.to_json() + "\n";
  return out;
}

void FormulaIndex::save(const std::filesystem::path& file) const {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << to_jsonl();
  if (!out) throw std::runtime_error("cannot write " + file.string());
}

FormulaIndex FormulaIndex::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  FormulaIndex index;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::string where = file.filename().string() + ":" + std::to_string(n);
    try {
      json j = json::parse(line);
      auto id = EntityId::parse(j.at("item").get<std::string>());
      if (!id) throw std::runtime_error("bad item id");
      FormulaIndexEntry e = make_index_entry(*id, j.at("texvc").get<std::string>());
      if (hex64(e.normalized_hash) != j.at("normalized_hash").get<std::string>())
        throw std::runtime_error("stored digest does not match formula");
      std::vector<std::uint64_t> stored;
      for (const auto& h : j.at("subtree_hashes")) stored.push_back(parse_hex64(h.get<std::string>()));
      if (stored != e.subtree_hashes) throw std::runtime_error("stored subtree digests do not match formula");
      index.insert(std::move(e));
    } catch (const ParseError& ex) {
      throw std::runtime_error(where + ": " + ex.what());
    } catch (const std::exception& ex) {
      throw std::runtime_error(where + ": " + ex.what());
    }
  }
  return index;
}

}  // namespace mathkg
