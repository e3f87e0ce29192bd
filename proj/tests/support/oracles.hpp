// Reference computations used to check the library. They read fixtures
// directly and use deliberately naive algorithms; none of them calls into
// the code under test beyond plain data accessors.

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mathkg/ast.hpp"
#include "mathkg/query.hpp"
#include "mathkg/store.hpp"

namespace mathkg::testing {

std::filesystem::path data_dir();

// Hop distance from root over item-valued claims of a Wikidata-style JSONL
// file. Unreachable records are absent.
std::map<std::string, int> fixture_distances(const std::filesystem::path& jsonl,
                                             const std::string& root);

struct DepthExpectation {
  std::set<std::string> full;
  std::set<std::string> stub;
};
DepthExpectation expected_depth_sets(const std::map<std::string, int>& dist, int depth);

// DLMF fixture rows keyed by DLMF id, each with the set of things it uses:
// concept keys named by semantic macros in the formula (macro table read
// from macros.tsv by string splitting) plus the explicit uses column.
std::map<std::string, std::set<std::string>> dlmf_uses(const std::filesystem::path& tsv,
                                                        const std::filesystem::path& macros_tsv);

// Rows that reach target by following uses edges one or more times,
// computed as a fixpoint rather than a queue walk.
std::set<std::string> dlmf_dependents(const std::map<std::string, std::set<std::string>>& uses,
                                      const std::string& target);

// Generate-and-test evaluation of a conjunctive pattern list: every
// combination of per-pattern matches is tried and kept if consistent.
// Rows come back as sorted renderings "?x=Q1;?y=Q2".
std::set<std::string> brute_force_select(const KnowledgeStore& store,
                                         const std::vector<TriplePattern>& patterns);

// Closure by repeated relaxation over a snapshot.
std::set<EntityId> fixpoint_closure(const KnowledgeStore& store, EntityId start, EntityId property,
                                    bool inverse);

// True if the S-expression of some subtree of doc equals that of query.
bool sexpr_contains(const MathNode& doc, const MathNode& query);

}  // namespace mathkg::testing
