#include "doctest.h"

#include <algorithm>

#include "mathkg/importer.hpp"
#include "mathkg/query.hpp"
#include "oracles.hpp"
#include "xml_check.hpp"

using namespace mathkg;

namespace {

struct Seeded {
  KnowledgeStore store;
  Seeded() {
    Importer imp(store);
    ImportReport r = imp.seed(testing::data_dir() / "fixtures" / "seed");
    REQUIRE(r.errors.empty());
  }
  EntityId dlmf(const std::string& id) const {
    auto e = store.find_by_label(EntityKind::item, "DLMF " + id);
    REQUIRE(e.has_value());
    return *e;
  }
  EntityId item(const std::string& label) const {
    auto e = store.find_by_label(EntityKind::item, label);
    REQUIRE(e.has_value());
    return *e;
  }
};

std::set<std::string> rows_of(const BindingSet& b) {
  std::set<std::string> out;
  for (const auto& row : b.rows) {
    std::string s;
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      if (!s.empty()) s += ";";
      const auto& v = row[i];
      s += "?" + b.vars[i] + "=" +
           (std::holds_alternative<ItemRef>(v) ? "item:" + std::get<ItemRef>(v).id.str()
                                               : std::to_string(v.index()) + ":" + render_value(v));
    }
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST_CASE("direct users of the imaginary unit") {
  Seeded s;
  auto b = select(s.store, parse_patterns(s.store, "?f <uses> <imaginary-unit>"));
  auto uses = testing::dlmf_uses(testing::data_dir() / "fixtures" / "seed" / "04_formulas.dlmf.tsv",
                                 testing::data_dir() / "macros.tsv");
  std::set<EntityId> want;
  for (const auto& [id, targets] : uses)
    if (targets.count("imaginary-unit")) want.insert(s.dlmf(id));
  std::set<EntityId> got;
  for (const auto& row : b.rows) got.insert(std::get<ItemRef>(row[0]).id);
  CHECK(got == want);
  CHECK(got.count(s.dlmf("7.5.E7")));
}

TEST_CASE("joins agree with the brute-force oracle") {
  Seeded s;
  for (std::string_view q :
       {"?f <uses> ?c", "?f <uses> ?c . ?c <instance of> ?k", "?w <author> ?a . ?w <published in> ?j",
        "?x <CRAN Project> ?n", "?f <uses> <gamma-function> . ?f <defining formula> ?t",
        "?a ?p ?a", "?s <CRAN Project> \"ggplot2\""}) {
    CAPTURE(q);
    auto patterns = parse_patterns(s.store, q);
    CHECK(rows_of(select(s.store, patterns)) == testing::brute_force_select(s.store, patterns));
  }
}

TEST_CASE("transitive closure agrees with the fixpoint oracle") {
  Seeded s;
  EntityId uses = resolve_entity_ref(s.store, "<uses>", EntityKind::property);
  for (const auto& e : s.store.snapshot()) {
    if (e->id.kind != EntityKind::item) continue;
    CHECK(transitive(s.store, e->id, uses, Direction::inverse) ==
          testing::fixpoint_closure(s.store, e->id, uses, true));
    CHECK(transitive(s.store, e->id, uses, Direction::forward) ==
          testing::fixpoint_closure(s.store, e->id, uses, false));
  }
  auto dependents = transitive(s.store, s.item("gamma-function"), uses, Direction::inverse);
  std::set<EntityId> want;
  auto rows = testing::dlmf_uses(testing::data_dir() / "fixtures" / "seed" / "04_formulas.dlmf.tsv",
                                 testing::data_dir() / "macros.tsv");
  for (const auto& id : testing::dlmf_dependents(rows, "gamma-function")) want.insert(s.dlmf(id));
  CHECK(dependents == want);
  CHECK(want.size() == 4);
}

TEST_CASE("query errors") {
  Seeded s;
  CHECK_THROWS_AS(parse_patterns(s.store, "?f <no such thing> ?c"), QueryError);
  CHECK_THROWS_AS(parse_patterns(s.store, "?f <uses>"), QueryError);
  CHECK_THROWS_AS(select(s.store, {}), QueryError);
  EntityId uses = resolve_entity_ref(s.store, "<uses>");
  CHECK_THROWS_AS(transitive(s.store, item_id(9999), uses, Direction::forward), QueryError);
}

TEST_CASE("binding set rendering") {
  Seeded s;
  auto b = select(s.store, parse_patterns(s.store, "?f <uses> <pi>"));
  std::string tsv = b.to_tsv();
  CHECK(tsv.rfind("?f\n", 0) == 0);
  CHECK(b.to_json().front() == '{');
}

TEST_CASE("formula homepage") {
  Seeded s;
  HomepageDoc doc = formula_homepage(s.store, s.dlmf("7.5.E7"));
  std::set<std::string> labels;
  for (const auto& c : doc.linked_concepts) labels.insert(c.label);
  CHECK(labels == std::set<std::string>{"error-function", "imaginary-unit", "pi"});
  CHECK(testing::check_xml(doc.mathml).ok);
  CHECK(doc.mathml.find("href=") != std::string::npos);
  CHECK(doc.to_html().find("<!DOCTYPE html>") == 0);

  HomepageDoc base = formula_homepage(s.store, s.dlmf("5.5.E1"));
  CHECK(std::find(base.backlinks.begin(), base.backlinks.end(), s.dlmf("5.7.E3")) != base.backlinks.end());
  CHECK_THROWS_AS(formula_homepage(s.store, s.item("ggplot2")), QueryError);
}
