#include "doctest.h"

#include "mathkg/chem.hpp"
#include "mathkg/mathml.hpp"
#include "mathkg/texvc.hpp"
#include "xml_check.hpp"

using namespace mathkg;

TEST_CASE("bundled suite") {
  auto suite = ce_test_suite();
  CHECK(suite.size() >= 60);
  for (const auto& c : suite) {
    CAPTURE(c.input);
    CHECK(parse_ce(c.input) == c.expected);
  }
}

TEST_CASE("tokenizer") {
  auto toks = tokenize_ce("2H2 + O2 -> 2H2O");
  REQUIRE(toks.size() == 11);
  CHECK(std::get<ce::Coefficient>(toks[0].value).digits == "2");
  CHECK(std::get<ce::ElementSymbol>(toks[1].value).symbol == "H");
  CHECK(std::get<ce::Subscript>(toks[2].value).digits == "2");
  CHECK(std::holds_alternative<ce::Plus>(toks[3].value));
  CHECK(std::get<ce::Arrow>(toks[6].value).kind == ce::ArrowKind::forward);
  CHECK(toks[6].offset == 9);
  CHECK(toks[6].length == 2);

  auto eq = tokenize_ce("N2 + 3H2 <=> 2NH3");
  bool equilibrium = false;
  for (const auto& t : eq)
    if (const auto* a = std::get_if<ce::Arrow>(&t.value)) equilibrium = a->kind == ce::ArrowKind::equilibrium;
  CHECK(equilibrium);

  auto ion = tokenize_ce("SO4^2-");
  const auto& charge = std::get<ce::ChargeSign>(ion.back().value);
  CHECK(charge.sign == '-');
  CHECK(charge.magnitude == "2");
}

TEST_CASE("errors point into the chemical input") {
  for (auto [in, off] : {std::pair<const char*, std::size_t>{"H2O ->", 6}, {"Ca(OH", 2},
                         {"H2 + + O2", 5}}) {
    CAPTURE(in);
    try {
      parse_ce(in);
      FAIL("expected ChemError");
    } catch (const ChemError& e) {
      CHECK(e.offset() == off);
    }
  }
}

TEST_CASE("print_ce round-trips the suite") {
  for (const auto& c : ce_test_suite()) {
    CAPTURE(c.input);
    const auto* eq = c.expected.as<ChemEquation>();
    REQUIRE(eq != nullptr);
    CHECK(parse_ce(print_ce(*eq)) == c.expected);
  }
}

TEST_CASE("\\ce inside texvc") {
  CHECK(parse_or_throw("\\ce{H2O}") == parse_ce("H2O"));
  CHECK(print_texvc(parse_ce("H2O")) == "\\ce{H2O}");
  auto bad = parse_texvc("x + \\ce{H2O ->}");
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error().byte_offset == 14);
  std::string mathml = emit_mathml(parse_or_throw("\\ce{Na+(aq) + Cl-(aq) -> NaCl(s)}"));
  CHECK(testing::check_xml(mathml).ok);
  CHECK(mathml.find("<mo>→</mo>") != std::string::npos);
}
