#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "formula_gen.hpp"
#include "golden.hpp"
#include "mathkg/formula_index.hpp"
#include "mathkg/kernels.hpp"
#include "mathkg/texvc.hpp"
#include "oracles.hpp"

using namespace mathkg;
namespace fs = std::filesystem;

namespace {

std::set<EntityId> ids(const std::vector<SearchHit>& hits) {
  std::set<EntityId> out;
  for (const auto& h : hits) out.insert(h.item);
  return out;
}

}  // namespace

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("exact and subexpression search") {
  FormulaIndex idx;
  idx.index_formula(item_id(1), "x^2 + y^2 = z^2");
  idx.index_formula(item_id(2), "\\frac{x^2}{2}");
  idx.index_formula(item_id(3), "a + b");
  CHECK(ids(idx.search("x^2", SearchMode::subexpression, 10)) == std::set<EntityId>{item_id(1), item_id(2)});
  CHECK(ids(idx.search("a+b", SearchMode::exact, 10)) == std::set<EntityId>{item_id(3)});
  CHECK(idx.search("x^2", SearchMode::exact, 10).empty());
  // Smaller documents rank first for the same query.
  auto hits = idx.search("x^2", SearchMode::subexpression, 10);
  CHECK(hits[0].item == item_id(2));
  CHECK(idx.search("x^2", SearchMode::subexpression, 1).size() == 1);
  CHECK_THROWS_AS(idx.search("x", SearchMode::exact, 0), std::invalid_argument);
  CHECK_THROWS_AS(idx.search("x^", SearchMode::exact, 5), ParseError);
}

TEST_CASE("whitespace and redundant braces do not affect matching") {
  FormulaIndex idx;
  idx.index_formula(item_id(1), "{x}^{2}+1");
  CHECK(ids(idx.search("x^2 + 1", SearchMode::exact, 5)) == std::set<EntityId>{item_id(1)});
}

TEST_CASE("replace and remove keep postings consistent") {
  FormulaIndex idx;
  idx.index_formula(item_id(1), "x^2");
  idx.index_formula(item_id(1), "y^3");
  CHECK(idx.size() == 1);
  CHECK(idx.search("x", SearchMode::subexpression, 5).empty());
  CHECK(idx.remove(item_id(1)));
  CHECK_FALSE(idx.remove(item_id(1)));
  CHECK(idx.search("y", SearchMode::subexpression, 5).empty());
}

TEST_CASE("failed insert leaves the index unchanged") {
  FormulaIndex idx;
  idx.index_formula(item_id(1), "x");
  CHECK_THROWS_AS(idx.index_formula(item_id(1), "x^"), ParseError);
  CHECK(idx.find(item_id(1))->texvc == "x");
}

TEST_CASE("search matches the structural oracle on random formulas") {
  testing::FormulaGen gen(2024, true);
  FormulaIndex idx;
  for (std::uint64_t i = 1; i <= 200; ++i) idx.index_formula(item_id(i), gen.formula());
  auto entries = idx.entries();
  for (int q = 0; q < 80; ++q) {
    std::string query = q % 2 ? gen.expr(2) : entries[gen.below(entries.size())]->texvc;
    CAPTURE(query);
    MathNode nq = parse_for_index(query);
    std::set<EntityId> want;
    for (const auto* e : entries)
      if (testing::sexpr_contains(*e->tree, nq)) want.insert(e->item);
    CHECK(ids(idx.search(query, SearchMode::subexpression, 1000)) == want);
  }
}

TEST_CASE("save and load") {
  FormulaIndex idx;
  idx.index_formula(item_id(1), "\\iunit^2 = -1");
  idx.index_formula(item_id(5), "\\sqrt{\\cpi}");
  fs::path file = fs::temp_directory_path() / "mathkg_index_test" / "index.jsonl";
  idx.save(file);
  FormulaIndex back = FormulaIndex::load(file);
  CHECK(back == idx);
  std::string text = testing::read_file(file);
  std::size_t pos = text.find("\"normalized_hash\":\"") + 19;
  text[pos] = text[pos] == '0' ? '1' : '0';
  std::ofstream(file, std::ios::trunc) << text;
  CHECK_THROWS(FormulaIndex::load(file));
}

TEST_CASE("serial and parallel kernels agree") {
  testing::FormulaGen gen(5, true);
  kernels::FormulaList list;
  std::vector<std::string> inputs;
  for (std::uint64_t i = 1; i <= 300; ++i) {
    list.emplace_back(item_id(i), gen.formula());
    inputs.push_back(i % 3 ? list.back().second : gen.fuzz_input(64));
  }
  auto a = kernels::build_entries_serial(list);
  auto b = kernels::build_entries_parallel(list);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].to_json() == b[i].to_json());

  FormulaIndex idx;
  for (auto& e : a) idx.insert(std::move(e));
  MathNode q = parse_for_index("x");
  CHECK(kernels::containment_scan_serial(idx.entries(), q) ==
        kernels::containment_scan_parallel(idx.entries(), q));
  CHECK(kernels::validate_corpus_serial(inputs) == kernels::validate_corpus_parallel(inputs));
  list.emplace_back(item_id(999), "x^");
  CHECK_THROWS_AS(kernels::build_entries_parallel(list), ParseError);
}
