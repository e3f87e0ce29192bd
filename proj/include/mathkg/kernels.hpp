// Data-parallel kernels. Every OpenMP kernel has a serial twin producing
// identical output; the serial versions are the reference for tests and
// the baseline for benchmarks.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mathkg/formula_index.hpp"
#include "mathkg/texvc.hpp"

namespace mathkg::kernels {

using FormulaList = std::vector<std::pair<EntityId, std::string>>;

// Index entries in input order. Throws the ParseError of the first
// unparsable formula.
std::vector<FormulaIndexEntry> build_entries_serial(const FormulaList& formulas);
std::vector<FormulaIndexEntry> build_entries_parallel(const FormulaList& formulas);

// Items whose tree contains query, ascending. Brute force, no hashing.
std::vector<EntityId> containment_scan_serial(const std::vector<const FormulaIndexEntry*>& entries,
                                              const MathNode& normalized_query);
std::vector<EntityId> containment_scan_parallel(const std::vector<const FormulaIndexEntry*>& entries,
                                                const MathNode& normalized_query);

// Parse outcome per input: nullopt on success, the error otherwise.
std::vector<std::optional<Diagnostic>> validate_corpus_serial(const std::vector<std::string>& inputs);
std::vector<std::optional<Diagnostic>> validate_corpus_parallel(const std::vector<std::string>& inputs);

}  // namespace mathkg::kernels
