#include "mathkg/kernels.hpp"

#include <algorithm>
#include <exception>

namespace mathkg::kernels {

std::vector<FormulaIndexEntry> build_entries_serial(const FormulaList& formulas) {
  std::vector<FormulaIndexEntry> out;
  out.reserve(formulas.size());
  for (const auto& [item, texvc] : formulas) out.push_back(make_index_entry(item, texvc));
  return out;
}

std::vector<FormulaIndexEntry> build_entries_parallel(const FormulaList& formulas) {
  const long n = static_cast<long>(formulas.size());
  std::vector<FormulaIndexEntry> out(formulas.size());
  std::vector<std::exception_ptr> errors(formulas.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = make_index_entry(formulas[i].first, formulas[i].second);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<EntityId> containment_scan_serial(const std::vector<const FormulaIndexEntry*>& entries,
                                              const MathNode& normalized_query) {
  std::vector<EntityId> out;
  for (const auto* e : entries)
    if (contains_subtree(*e->tree, normalized_query)) out.push_back(e->item);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EntityId> containment_scan_parallel(const std::vector<const FormulaIndexEntry*>& entries,
                                                const MathNode& normalized_query) {
  const long n = static_cast<long>(entries.size());
  std::vector<char> hit(entries.size(), 0);
#pragma omp parallel for schedule(dynamic, 32)
  for (long i = 0; i < n; ++i) hit[i] = contains_subtree(*entries[i]->tree, normalized_query);
  std::vector<EntityId> out;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (hit[i]) out.push_back(entries[i]->item);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::optional<Diagnostic> check_one(const std::string& input) {
  ParseResult r = parse_texvc(input);
  if (r.ok()) return std::nullopt;
  return r.error();
}

}  // namespace

std::vector<std::optional<Diagnostic>> validate_corpus_serial(const std::vector<std::string>& inputs) {
  std::vector<std::optional<Diagnostic>> out;
  out.reserve(inputs.size());
  for (const auto& s : inputs) out.push_back(check_one(s));
  return out;
}

std::vector<std::optional<Diagnostic>> validate_corpus_parallel(const std::vector<std::string>& inputs) {
  const long n = static_cast<long>(inputs.size());
  std::vector<std::optional<Diagnostic>> out(inputs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < n; ++i) out[i] = check_one(inputs[i]);
  return out;
}

}  // namespace mathkg::kernels
