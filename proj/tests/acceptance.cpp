// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "formula_gen.hpp"
#include "golden.hpp"
#include "mathkg/chem.hpp"
#include "mathkg/formula_index.hpp"
#include "mathkg/importer.hpp"
#include "mathkg/macros.hpp"
#include "mathkg/mathml.hpp"
#include "mathkg/query.hpp"
#include "mathkg/store.hpp"
#include "mathkg/texvc.hpp"
#include "oracles.hpp"
#include "xml_check.hpp"

using namespace mathkg;
namespace fs = std::filesystem;

namespace {

constexpr double kCorpusMinSuccess = 0.99;
constexpr int kFuzzInputs = 10000;
constexpr std::size_t kFuzzMaxBytes = 256;
constexpr double kParserBudgetSeconds = 60.0;
constexpr std::size_t kMinChemCases = 60;
constexpr int kSearchFormulas = 500;
constexpr int kSearchQueries = 200;
constexpr double kSearchBudgetSeconds = 120.0;
constexpr std::uint64_t kSeed = 20240521;

const std::set<std::string> kVocabulary = {
    "math", "mrow",  "mi",    "mn",    "mo",    "msub",   "msup",      "msubsup",   "mfrac",
    "msqrt", "mroot", "mtext", "mspace", "mover", "munder", "munderover", "semantics", "annotation"};

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> corpus() {
  std::ifstream in(testing::data_dir() / "corpus" / "wiki_sample.txt");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string failure_report(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    ParseResult r = parse_texvc(lines[i]);
    if (!r.ok())
      out += std::to_string(i + 1) + "\t" + std::to_string(r.error().byte_offset) + "\t" +
             r.error().message + "\n";
  }
  return out;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "mathkg_acceptance" / name;
  fs::remove_all(p);
  return p;
}

std::string exported(const KnowledgeStore& s, const std::string& name) {
  fs::path dir = scratch(name);
  export_store(s, dir);
  return testing::read_file(dir / "entities.jsonl") + testing::read_file(dir / "mappings.jsonl");
}

Outcome parser_totality() {
  auto t0 = Clock::now();
  auto lines = corpus();
  std::size_t ok = 0;
  for (const auto& l : lines) ok += parse_texvc(l).ok();
  double rate = lines.empty() ? 0 : static_cast<double>(ok) / lines.size();

  fs::path golden = testing::data_dir() / "corpus" / "expected_failures.tsv";
  std::string report = failure_report(lines);
  if (std::getenv("UPDATE_GOLDEN")) std::ofstream(golden, std::ios::binary | std::ios::trunc) << report;
  bool report_matches = fs::exists(golden) && testing::read_file(golden) == report;

  testing::FormulaGen gen(kSeed);
  int crashes = 0, bad_offsets = 0;
  for (int i = 0; i < kFuzzInputs; ++i) {
    std::string s = gen.fuzz_input(kFuzzMaxBytes);
    try {
      ParseResult r = parse_texvc(s);
      if (!r.ok() && r.error().byte_offset > s.size()) ++bad_offsets;
      for (const auto& w : r.warnings())
        if (w.byte_offset > s.size()) ++bad_offsets;
    } catch (...) {
      ++crashes;
    }
  }
  double secs = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "corpus %zu/%zu (%.1f%%), failure report %s, fuzz %d inputs: %d exceptions, %d bad "
                "offsets, %.1fs",
                ok, lines.size(), 100 * rate, report_matches ? "matches golden" : "differs from golden",
                kFuzzInputs, crashes, bad_offsets, secs);
  return {rate >= kCorpusMinSuccess && report_matches && crashes == 0 && bad_offsets == 0 &&
              secs < kParserBudgetSeconds,
          buf};
}

Outcome round_trip() {
  std::size_t parsed = 0, stable = 0;
  std::string first_bad;
  for (const auto& l : corpus()) {
    ParseResult r = parse_texvc(l);
    if (!r.ok()) continue;
    ++parsed;
    ParseResult again = parse_texvc(print_texvc(r.tree()));
    if (again.ok() && again.tree() == r.tree()) ++stable;
    else if (first_bad.empty()) first_bad = l;
  }
  std::string d = std::to_string(stable) + "/" + std::to_string(parsed) + " parsed corpus entries round-trip";
  if (!first_bad.empty()) d += "; first failure: " + first_bad;
  return {parsed > 0 && stable == parsed, d};
}

Outcome mathml_validity() {
  std::size_t docs = 0, malformed = 0;
  std::set<std::string> foreign;
  for (const auto& l : corpus()) {
    ParseResult r = parse_texvc(l);
    if (!r.ok()) continue;
    for (Display d : {Display::inline_, Display::block}) {
      EmitOptions opts;
      opts.display = d;
      testing::XmlCheck chk = testing::check_xml(emit_mathml(r.tree(), opts));
      ++docs;
      if (!chk.ok) ++malformed;
      for (const auto& e : chk.elements)
        if (!kVocabulary.count(e)) foreign.insert(e);
    }
  }
  std::string run1 = testing::render_command_golden();
  std::string run2 = testing::render_command_golden();
  bool golden_ok = fs::exists(testing::golden_commands_path()) &&
                   testing::read_file(testing::golden_commands_path()) == run1;
  std::string d = std::to_string(docs) + " documents, " + std::to_string(malformed) + " malformed, " +
                  std::to_string(foreign.size()) + " foreign elements";
  for (const auto& f : foreign) d += " <" + f + ">";
  d += "; golden " + std::string(run1 == run2 ? "stable" : "unstable") + " across runs and " +
       (golden_ok ? "matches file" : "differs from file");
  return {malformed == 0 && foreign.empty() && run1 == run2 && golden_ok, d};
}

Outcome link_neutrality() {
  const MacroTable& table = default_macro_table();
  int checked = 0, differing = 0;
  std::string first_bad;
  for (const MacroDef* m : table.entries()) {
    for (std::string tex : {"\\" + m->name, "x + \\" + m->name + "^{2}", "\\frac{\\" + m->name + "}{2}"}) {
      std::string plain_src = desugar(tex, table);
      EmitOptions off;
      std::string plain = emit_mathml(parse_or_throw(plain_src), off);
      std::string semantic = emit_mathml(expand_semantics(tex, table), off);
      EmitOptions on;
      on.resolve_links = true;
      std::string linked = emit_mathml(expand_semantics(tex, table), on);
      std::string base = testing::check_xml(plain).skeleton;
      bool same = testing::check_xml(semantic).skeleton == base &&
                  testing::skeleton_without(linked, "href") == base &&
                  semantic.find("href") == std::string::npos;
      ++checked;
      if (!same) {
        ++differing;
        if (first_bad.empty()) first_bad = tex;
      }
    }
  }
  std::string d = std::to_string(table.entries().size()) + " macros, " + std::to_string(checked) +
                  " renderings, " + std::to_string(differing) + " structural differences";
  if (!first_bad.empty()) d += "; first: " + first_bad;
  return {checked > 0 && differing == 0, d};
}

Outcome mhchem() {
  auto suite = ce_test_suite();
  std::size_t passed = 0;
  std::set<std::string> inputs;
  for (const auto& c : suite) {
    inputs.insert(c.input);
    try {
      if (parse_ce(c.input) == c.expected) ++passed;
    } catch (const ChemError&) {
    }
  }
  bool required = inputs.count("H2O") && inputs.count("2H2 + O2 -> 2H2O") && inputs.count("SO4^2-");
  bool equilibrium = false;
  for (const auto& in : inputs) equilibrium |= in.find("<=>") != std::string::npos;
  std::string d = std::to_string(passed) + "/" + std::to_string(suite.size()) + " cases, required inputs " +
                  (required && equilibrium ? "present" : "missing");
  return {suite.size() >= kMinChemCases && passed == suite.size() && required && equilibrium, d};
}

Outcome import_depth() {
  fs::path graph = testing::data_dir() / "fixtures" / "graph" / "wikidata_graph.jsonl";
  auto dist = testing::fixture_distances(graph, "Q1799");
  FixtureConnector conn(graph);
  std::string d = std::to_string(dist.size()) + " reachable fixture entities;";
  bool pass = dist.size() >= 12;
  for (int depth = 0; depth <= 2; ++depth) {
    KnowledgeStore store;
    Importer imp(store);
    imp.import_entity(conn, "Q1799", depth);
    auto want = testing::expected_depth_sets(dist, depth);
    std::set<std::string> full, stub;
    for (const auto& m : store.mappings())
      if (m.upstream.front() == 'Q') (m.completeness == Completeness::full ? full : stub).insert(m.upstream);
    bool ok = full == want.full && stub == want.stub;
    std::string before = exported(store, "depth" + std::to_string(depth) + "a");
    imp.import_entity(conn, "Q1799", depth);
    bool idem = exported(store, "depth" + std::to_string(depth) + "b") == before;
    pass &= ok && idem;
    d += " depth " + std::to_string(depth) + ": " + std::to_string(full.size()) + " full/" +
         std::to_string(stub.size()) + " stub " + (ok ? "as predicted" : "MISMATCH") +
         (idem ? ", re-import identical" : ", re-import changed export") + ";";
  }
  d.pop_back();
  return {pass, d};
}

Outcome query_reproduction() {
  KnowledgeStore store;
  Importer imp(store);
  ImportReport rep = imp.seed(testing::data_dir() / "fixtures" / "seed");
  if (!rep.errors.empty()) return {false, "seed reported " + std::to_string(rep.errors.size()) + " errors"};
  auto rows = testing::dlmf_uses(testing::data_dir() / "fixtures" / "seed" / "04_formulas.dlmf.tsv",
                                 testing::data_dir() / "macros.tsv");
  auto local = [&](const std::string& dlmf_id) {
    auto e = store.find_by_label(EntityKind::item, "DLMF " + dlmf_id);
    return e ? *e : EntityId{};
  };

  std::set<EntityId> want_direct;
  for (const auto& [id, uses] : rows)
    if (uses.count("imaginary-unit")) want_direct.insert(local(id));
  std::set<EntityId> got_direct;
  for (const auto& row : select(store, parse_patterns(store, "?item <uses> <imaginary-unit>")).rows)
    got_direct.insert(std::get<ItemRef>(row[0]).id);
  EntityId erf_formula = local("7.5.E7");
  EntityId iunit = resolve_entity_ref(store, "<imaginary-unit>");

  std::set<EntityId> want_gamma;
  for (const auto& id : testing::dlmf_dependents(rows, "gamma-function")) want_gamma.insert(local(id));
  auto got_gamma = transitive(store, resolve_entity_ref(store, "<gamma-function>"),
                              resolve_entity_ref(store, "<uses>"), Direction::inverse);

  bool direct_ok = got_direct == want_direct && got_direct.count(erf_formula);
  bool gamma_ok = got_gamma == want_gamma && want_gamma.size() >= 4;
  std::string d = "uses imaginary-unit (" + iunit.str() + "): " + std::to_string(got_direct.size()) +
                  " items " + (direct_ok ? "as expected" : "MISMATCH") + ", erf formula " +
                  erf_formula.str() + (got_direct.count(erf_formula) ? " included" : " missing") +
                  "; transitive gamma-function: " + std::to_string(got_gamma.size()) + " items " +
                  (gamma_ok ? "as expected" : "MISMATCH");
  return {direct_ok && gamma_ok, d};
}

void collect_subtrees(const MathNode& n, std::vector<const MathNode*>& out) {
  visit_preorder(n, [&](const MathNode& c) { out.push_back(&c); });
}

Outcome search_oracle() {
  auto t0 = Clock::now();
  testing::FormulaGen gen(kSeed + 1, true);
  FormulaIndex idx;
  std::set<std::uint64_t> seen;
  std::uint64_t next = 1;
  while (idx.size() < static_cast<std::size_t>(kSearchFormulas)) {
    std::string f = gen.formula();
    FormulaIndexEntry e = make_index_entry(item_id(next), f);
    if (!seen.insert(e.normalized_hash).second) continue;
    idx.insert(std::move(e));
    ++next;
  }
  auto entries = idx.entries();

  int mismatches = 0;
  std::size_t total_hits = 0;
  for (int q = 0; q < kSearchQueries; ++q) {
    std::string query;
    if (q % 4 == 3) {
      query = gen.expr(1);
    } else {
      std::vector<const MathNode*> subs;
      collect_subtrees(*entries[gen.below(entries.size())]->tree, subs);
      query = print_texvc(*subs[gen.below(subs.size())]);
    }
    MathNode nq = parse_for_index(query);
    std::set<EntityId> want;
    for (const auto* e : entries)
      if (testing::sexpr_contains(*e->tree, nq)) want.insert(e->item);
    std::set<EntityId> got;
    for (const auto& h : idx.search(query, SearchMode::subexpression, entries.size())) got.insert(h.item);
    total_hits += got.size();
    if (got != want) ++mismatches;
  }

  int self_misses = 0;
  for (const auto* e : entries) {
    auto hits = idx.search(e->texvc, SearchMode::exact, 1);
    if (hits.empty() || hits[0].item != e->item) ++self_misses;
  }
  double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu formulas, %d queries (%zu hits): %d set mismatches; self-retrieval misses %d; %.1fs",
                entries.size(), kSearchQueries, total_hits, mismatches, self_misses, secs);
  return {mismatches == 0 && self_misses == 0 && secs < kSearchBudgetSeconds, buf};
}

Outcome persistence() {
  KnowledgeStore store;
  Importer imp(store);
  imp.seed(testing::data_dir() / "fixtures" / "seed");
  imp.import_entity(FixtureConnector(testing::data_dir() / "fixtures" / "graph" / "wikidata_graph.jsonl"),
                    "Q1799", 2);
  fs::path a = scratch("persist_a"), b = scratch("persist_b");
  export_store(store, a);
  KnowledgeStore fresh;
  import_store(fresh, a);
  export_store(fresh, b);
  bool same = true;
  std::size_t bytes = 0;
  for (const char* f : {"entities.jsonl", "mappings.jsonl"}) {
    std::string x = testing::read_file(a / f), y = testing::read_file(b / f);
    bytes += x.size();
    same &= x == y;
  }
  return {same, std::to_string(store.entity_count()) + " entities, " + std::to_string(bytes) +
                    " bytes exported, second export " + (same ? "byte-identical" : "differs")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"parser totality and corpus", parser_totality},
      {"round-trip", round_trip},
      {"MathML validity", mathml_validity},
      {"semantic-link neutrality", link_neutrality},
      {"mhchem conformance", mhchem},
      {"import depth semantics", import_depth},
      {"query reproduction", query_reproduction},
      {"search oracle equivalence", search_oracle},
      {"store persistence", persistence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
