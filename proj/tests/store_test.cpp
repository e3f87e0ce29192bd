#include "doctest.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "golden.hpp"
#include "mathkg/store.hpp"

using namespace mathkg;
namespace fs = std::filesystem;

namespace {

using Code = StoreError::Code;

template <typename Fn>
Code code_of(Fn&& fn) {
  try {
    fn();
  } catch (const StoreError& e) {
    return e.code();
  }
  FAIL("no StoreError thrown");
  return Code::corrupt_file;
}

fs::path scratch(const char* name) {
  fs::path p = fs::temp_directory_path() / "mathkg_store_test" / name;
  fs::remove_all(p);
  return p;
}

struct Fixture {
  KnowledgeStore store;
  EntityId uses = store.create_entity(EntityKind::property, {{"en", "uses"}}, {}, {}, Datatype::item);
  EntityId formula = store.create_entity(EntityKind::property, {{"en", "defining formula"}}, {}, {},
                                         Datatype::math);
  EntityId doi = store.create_entity(EntityKind::property, {{"en", "DOI"}}, {}, {}, Datatype::external_id);
  EntityId name = store.create_entity(EntityKind::property, {{"en", "name"}}, {}, {}, Datatype::string);
  EntityId pi = store.create_entity(EntityKind::item, {{"en", "pi"}}, {{"en", "ratio"}});
};

}  // namespace

TEST_CASE("entity ids and parsing") {
  CHECK(item_id(7).str() == "Q7");
  CHECK(property_id(4).str() == "P4");
  CHECK(EntityId::parse("Q12") == item_id(12));
  CHECK_FALSE(EntityId::parse("Q"));
  CHECK_FALSE(EntityId::parse("X1"));
  CHECK_FALSE(EntityId::parse("Q0"));
}

TEST_CASE("creation rules") {
  Fixture f;
  CHECK(f.pi == item_id(1));
  CHECK(f.uses == property_id(1));
  CHECK(code_of([&] { f.store.create_entity(EntityKind::item, {{"en", "pi"}}); }) == Code::label_collision);
  // Same label on a different kind is fine.
  CHECK_NOTHROW(f.store.create_entity(EntityKind::property, {{"en", "pi"}}, {}, {}, Datatype::string));
  CHECK(code_of([&] { f.store.create_entity(EntityKind::property, {{"en", "x"}}); }) == Code::missing_datatype);
  CHECK(code_of([&] { f.store.create_entity(EntityKind::item, {{"en", "y"}}, {}, {}, Datatype::url); }) ==
        Code::unexpected_datatype);
  CHECK(f.store.find_by_label(EntityKind::item, "pi") == f.pi);
  CHECK(f.store.get(f.pi)->descriptions.at("en") == "ratio");
}

TEST_CASE("statement checks") {
  Fixture f;
  EntityId e = f.store.create_entity(EntityKind::item, {{"en", "Euler identity"}});
  f.store.add_statement(e, {f.uses, ItemRef{f.pi}, {}});
  f.store.add_statement(e, {f.formula, MathVal{"e^{i\\pi}+1=0"}, {}});
  CHECK(code_of([&] { f.store.add_statement(e, {f.uses, StringVal{"x"}, {}}); }) == Code::datatype_mismatch);
  CHECK(code_of([&] { f.store.add_statement(e, {f.uses, ItemRef{item_id(99)}, {}}); }) == Code::unknown_entity);
  CHECK(code_of([&] { f.store.add_statement(e, {property_id(99), StringVal{"x"}, {}}); }) ==
        Code::unknown_entity);
  CHECK(code_of([&] { f.store.add_statement(e, {f.formula, MathVal{"x^"}, {}}); }) == Code::invalid_value);
  CHECK(code_of([&] { f.store.add_statement(e, {f.doi, ExternalIdVal{"DOI", "not a doi"}, {}}); }) ==
        Code::invalid_value);
  CHECK(code_of([&] { f.store.add_statement(item_id(99), {f.name, StringVal{"x"}, {}}); }) ==
        Code::unknown_entity);
}

TEST_CASE("add_statement is idempotent on property and value") {
  Fixture f;
  auto a = f.store.add_statement(f.pi, {f.name, StringVal{"π"}, {}});
  auto b = f.store.add_statement(f.pi, {f.name, StringVal{"π"}, {{f.name, StringVal{"q"}}}});
  CHECK(a.index == b.index);
  CHECK(f.store.get(f.pi)->statements.size() == 1);
  CHECK(f.store.get(f.pi)->statements[0].qualifiers.empty());
}

TEST_CASE("external identifiers are unique and resolvable") {
  Fixture f;
  EntityId article = f.store.create_entity(EntityKind::item, {{"en", "article"}});
  f.store.add_statement(article, {f.doi, ExternalIdVal{"DOI", "10.5555/abc"}, {}});
  CHECK(f.store.resolve_external("DOI", "10.5555/abc") == article);
  CHECK_FALSE(f.store.resolve_external("DOI", "10.5555/zzz"));
  CHECK(code_of([&] { f.store.add_statement(f.pi, {f.doi, ExternalIdVal{"DOI", "10.5555/abc"}, {}}); }) ==
        Code::duplicate_external_id);
  CHECK(code_of([&] { f.store.resolve_external("Nope", "1"); }) == Code::unregistered_type);
  CHECK(code_of([&] { f.store.resolve_external("DOI", "bad"); }) == Code::invalid_value);
  // Types missing from the registry are stored unchecked.
  f.store.add_statement(f.pi, {f.doi, ExternalIdVal{"ISSN", "1234-5679"}, {}});
  CHECK(f.store.find_external("ISSN", "1234-5679") == f.pi);
}

TEST_CASE("mapping table") {
  Fixture f;
  f.store.record_mapping(f.pi, "wikidata", "Q167", Completeness::stub);
  f.store.record_mapping(f.pi, "wikidata", "Q167", Completeness::full);
  CHECK(f.store.get_mapping("wikidata", "Q167")->completeness == Completeness::full);
  CHECK(code_of([&] { f.store.record_mapping(f.pi, "wikidata", "Q167", Completeness::stub); }) ==
        Code::completeness_downgrade);
  EntityId other = f.store.create_entity(EntityKind::item, {{"en", "e"}});
  CHECK(code_of([&] { f.store.record_mapping(other, "wikidata", "Q167", Completeness::full); }) ==
        Code::mapping_conflict);
  CHECK(code_of([&] { f.store.record_mapping(f.pi, "wikidata", "Q1", Completeness::full); }) ==
        Code::mapping_conflict);
  CHECK(f.store.get_mapping_for(f.pi, "wikidata")->upstream == "Q167");
  CHECK(code_of([&] { f.store.record_mapping(item_id(50), "x", "y", Completeness::stub); }) ==
        Code::unknown_entity);
}

TEST_CASE("counts") {
  Fixture f;
  f.store.add_statement(f.pi, {f.name, StringVal{"pi"}, {{f.name, StringVal{"q"}}}});
  CHECK(f.store.entity_count() == 5);
  CHECK(f.store.statement_count() == 1);
  CHECK(f.store.triple_count() == 2);
}

TEST_CASE("export then import reproduces the files") {
  Fixture f;
  EntityId e = f.store.create_entity(EntityKind::item, {{"en", "Euler identity"}, {"de", "Eulersche Identität"}},
                                     {}, {{"en", {"e identity"}}});
  f.store.add_statement(e, {f.uses, ItemRef{f.pi}, {{f.name, StringVal{"via \"exp\""}}}});
  f.store.add_statement(e, {f.formula, MathVal{"e^{i\\pi}+1=0"}, {}});
  f.store.add_statement(e, {f.doi, ExternalIdVal{"DOI", "10.5555/x"}, {}});
  f.store.record_mapping(e, "wikidata", "Q1", Completeness::full);

  fs::path a = scratch("a"), b = scratch("b");
  export_store(f.store, a);
  KnowledgeStore back;
  import_store(back, a);
  export_store(back, b);
  for (const char* file : {"entities.jsonl", "mappings.jsonl"})
    CHECK(testing::read_file(a / file) == testing::read_file(b / file));
  CHECK(*back.get(e) == *f.store.get(e));
  // New ids continue after the highest restored one.
  CHECK(back.create_entity(EntityKind::item, {{"en", "new"}}) == item_id(3));
}

TEST_CASE("corrupt files are rejected and leave the store empty") {
  fs::path dir = scratch("corrupt");
  fs::create_directories(dir);
  std::ofstream(dir / "entities.jsonl") << "{\"id\":\"Q1\",\"kind\":\"item\",\"labels\":{\"en\":\"a\"}}\n"
                                        << "{\"id\":\"Q2\",\"kind\":\"item\",\"labels\":{\"en\":\"a\"}}\n";
  std::ofstream(dir / "mappings.jsonl") << "";
  KnowledgeStore s;
  CHECK_THROWS_AS(import_store(s, dir), StoreError);
  CHECK(s.empty());
  std::ofstream(dir / "entities.jsonl") << "{not json\n";
  CHECK_THROWS_AS(import_store(s, dir), StoreError);
  CHECK(s.empty());
}

TEST_CASE("readers see consistent snapshots during writes") {
  Fixture f;
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    while (!done) {
      auto snap = f.store.snapshot();
      for (const auto& e : snap)
        for (const auto& st : e->statements)
          if (const auto* r = std::get_if<ItemRef>(&st.value))
            if (!f.store.exists(r->id)) ++bad;
    }
  });
  EntityId prev = f.pi;
  for (int i = 0; i < 300; ++i) {
    EntityId e = f.store.create_entity(EntityKind::item, {{"en", "n" + std::to_string(i)}});
    f.store.add_statement(e, {f.uses, ItemRef{prev}, {}});
    prev = e;
  }
  done = true;
  reader.join();
  CHECK(bad == 0);
  CHECK(f.store.entity_count() == 305);
}
