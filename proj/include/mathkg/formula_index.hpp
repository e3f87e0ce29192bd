// Search index over stored formulas: exact and subexpression match by
// subtree hashing, with structural verification of every candidate.
//
// Mutations are single-writer; const member functions may run concurrently.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mathkg/ast.hpp"
#include "mathkg/store.hpp"

namespace mathkg {

std::uint64_t fnv1a64(std::string_view bytes);

// Parses with the default macro table and normalizes. Throws ParseError.
MathNode parse_for_index(std::string_view texvc);

// Digest of to_sexpr(node) for every node of the tree, sorted and unique.
std::vector<std::uint64_t> subtree_hashes(const MathNode& normalized);

// True if some node of doc equals query.
bool contains_subtree(const MathNode& doc, const MathNode& query);

struct FormulaIndexEntry {
  EntityId item;
  std::string texvc;
  std::uint64_t normalized_hash = 0;
  std::vector<std::uint64_t> subtree_hashes;  // sorted
  std::map<std::string, std::size_t> token_bag;
  std::size_t size = 0;                     // node count of the normalized tree
  std::shared_ptr<const MathNode> tree;     // normalized

  std::string to_json() const;
};

// Throws ParseError when texvc does not parse.
FormulaIndexEntry make_index_entry(EntityId item, std::string_view texvc);

enum class SearchMode { exact, subexpression };

struct SearchHit {
  EntityId item;
  double score = 0;
  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

class FormulaIndex {
 public:
  // Inserts or replaces the entry for item. On parse failure the index is
  // unchanged and ParseError propagates.
  void index_formula(EntityId item, std::string_view texvc);
  void insert(FormulaIndexEntry entry);
  bool remove(EntityId item);

  // Ranked by score descending, then item ascending. Throws ParseError for
  // an unparsable query and std::invalid_argument when limit is 0.
  std::vector<SearchHit> search(std::string_view query, SearchMode mode, std::size_t limit) const;
  std::vector<SearchHit> search_tree(const MathNode& normalized_query, SearchMode mode,
                                     std::size_t limit) const;

  std::size_t size() const { return entries_.size(); }
  const FormulaIndexEntry* find(EntityId item) const;
  std::vector<const FormulaIndexEntry*> entries() const;  // by item

  // First formula statement of every item in the store.
  static FormulaIndex rebuild(const KnowledgeStore& store);

  void save(const std::filesystem::path& file) const;
  static FormulaIndex load(const std::filesystem::path& file);
  std::string to_jsonl() const;

  friend bool operator==(const FormulaIndex& a, const FormulaIndex& b) {
    return a.to_jsonl() == b.to_jsonl();
  }

 private:
  std::map<EntityId, FormulaIndexEntry> entries_;
  std::unordered_map<std::uint64_t, std::set<EntityId>> postings_;
};

}  // namespace mathkg
