// mhchem conformance cases. Expected trees are written out by hand from the
// mhchem notation rules; they are not produced by parse_ce.

#include "mathkg/chem.hpp"

namespace mathkg {

namespace {

using build::num;
using build::op;
using build::row;
using build::subsup;

MathNode el(const char* s) { return build::upright(s); }
MathNode n(const char* s) { return num(s); }
MathNode plus() { return op("+"); }
MathNode arrow() { return op("->"); }
MathNode eqm() { return op("<=>"); }
MathNode state(const char* s) { return build::cmd("text", {build::upright(std::string("(") + s + ")")}); }

MathNode charge(std::string_view c) {
  std::string sign(1, c.back());
  if (c.size() == 1) return op(sign);
  return row({num(std::string(c.substr(0, c.size() - 1))), op(sign)});
}

MathNode s(MathNode base, const char* digits) { return build::sub(std::move(base), num(digits)); }
MathNode q(MathNode base, std::string_view c) { return build::sup(std::move(base), charge(c)); }
MathNode sq(MathNode base, const char* digits, std::string_view c) {
  return subsup(std::move(base), num(digits), charge(c));
}
MathNode grp(std::vector<MathNode> inner) {
  std::vector<MathNode> items;
  items.push_back(op("("));
  for (auto& i : inner) items.push_back(std::move(i));
  items.push_back(op(")"));
  return row(std::move(items));
}

}  // namespace

std::vector<CeCase> ce_test_suite() {
  std::vector<CeCase> c;
  auto add = [&](const char* in, std::vector<MathNode> kids) {
    c.push_back(CeCase{in, build::ce(std::move(kids))});
  };

  add("H2O", {s(el("H"), "2"), el("O")});
  add("CO2", {el("C"), s(el("O"), "2")});
  add("O2", {s(el("O"), "2")});
  add("NaCl", {el("Na"), el("Cl")});
  add("H2SO4", {s(el("H"), "2"), el("S"), s(el("O"), "4")});
  add("CH4", {el("C"), s(el("H"), "4")});
  add("C6H12O6", {s(el("C"), "6"), s(el("H"), "12"), s(el("O"), "6")});
  add("NH3", {el("N"), s(el("H"), "3")});
  add("Fe2O3", {s(el("Fe"), "2"), s(el("O"), "3")});
  add("Ca(OH)2", {el("Ca"), s(grp({el("O"), el("H")}), "2")});
  add("Mg(NO3)2", {el("Mg"), s(grp({el("N"), s(el("O"), "3")}), "2")});
  add("Al2(SO4)3", {s(el("Al"), "2"), s(grp({el("S"), s(el("O"), "4")}), "3")});
  add("(NH4)2SO4", {s(grp({el("N"), s(el("H"), "4")}), "2"), el("S"), s(el("O"), "4")});
  add("2H2 + O2 -> 2H2O",
      {n("2"), s(el("H"), "2"), plus(), s(el("O"), "2"), arrow(), n("2"), s(el("H"), "2"), el("O")});
  add("CH4 + 2O2 -> CO2 + 2H2O",
      {el("C"), s(el("H"), "4"), plus(), n("2"), s(el("O"), "2"), arrow(), el("C"), s(el("O"), "2"),
       plus(), n("2"), s(el("H"), "2"), el("O")});
  add("N2 + 3H2 <=> 2NH3",
      {s(el("N"), "2"), plus(), n("3"), s(el("H"), "2"), eqm(), n("2"), el("N"), s(el("H"), "3")});
  add("H2O <=> H+ + OH-",
      {s(el("H"), "2"), el("O"), eqm(), q(el("H"), "+"), plus(), el("O"), q(el("H"), "-")});
  add("SO4^2-", {el("S"), sq(el("O"), "4", "2-")});
  add("Fe^3+", {q(el("Fe"), "3+")});
  add("Fe^{3+}", {q(el("Fe"), "3+")});
  add("Na+", {q(el("Na"), "+")});
  add("Cl-", {q(el("Cl"), "-")});
  add("NH4+", {el("N"), sq(el("H"), "4", "+")});
  add("PO4^3-", {el("P"), sq(el("O"), "4", "3-")});
  add("Cu^2+", {q(el("Cu"), "2+")});
  add("CO3^2-", {el("C"), sq(el("O"), "3", "2-")});
  add("NaCl(aq)", {el("Na"), el("Cl"), state("aq")});
  add("H2O(l)", {s(el("H"), "2"), el("O"), state("l")});
  add("CO2(g)", {el("C"), s(el("O"), "2"), state("g")});
  add("AgCl(s)", {el("Ag"), el("Cl"), state("s")});
  add("Na+(aq) + Cl-(aq) -> NaCl(s)",
      {q(el("Na"), "+"), state("aq"), plus(), q(el("Cl"), "-"), state("aq"), arrow(), el("Na"),
       el("Cl"), state("s")});
  add("CaCO3(s) -> CaO(s) + CO2(g)",
      {el("Ca"), el("C"), s(el("O"), "3"), state("s"), arrow(), el("Ca"), el("O"), state("s"), plus(),
       el("C"), s(el("O"), "2"), state("g")});
  add("2Na + Cl2 -> 2NaCl",
      {n("2"), el("Na"), plus(), s(el("Cl"), "2"), arrow(), n("2"), el("Na"), el("Cl")});
  add("Zn + 2HCl -> ZnCl2 + H2",
      {el("Zn"), plus(), n("2"), el("H"), el("Cl"), arrow(), el("Zn"), s(el("Cl"), "2"), plus(),
       s(el("H"), "2")});
  add("2KClO3 -> 2KCl + 3O2",
      {n("2"), el("K"), el("Cl"), s(el("O"), "3"), arrow(), n("2"), el("K"), el("Cl"), plus(), n("3"),
       s(el("O"), "2")});
  add("Fe^3+ + 3OH- -> Fe(OH)3",
      {q(el("Fe"), "3+"), plus(), n("3"), el("O"), q(el("H"), "-"), arrow(), el("Fe"),
       s(grp({el("O"), el("H")}), "3")});
  add("Ag+ + Cl- <=> AgCl(s)",
      {q(el("Ag"), "+"), plus(), q(el("Cl"), "-"), eqm(), el("Ag"), el("Cl"), state("s")});
  add("CH3COOH <=> CH3COO- + H+",
      {el("C"), s(el("H"), "3"), el("C"), el("O"), el("O"), el("H"), eqm(), el("C"), s(el("H"), "3"),
       el("C"), el("O"), q(el("O"), "-"), plus(), q(el("H"), "+")});
  add("2H2O2 -> 2H2O + O2",
      {n("2"), s(el("H"), "2"), s(el("O"), "2"), arrow(), n("2"), s(el("H"), "2"), el("O"), plus(),
       s(el("O"), "2")});
  add("C3H8 + 5O2 -> 3CO2 + 4H2O",
      {s(el("C"), "3"), s(el("H"), "8"), plus(), n("5"), s(el("O"), "2"), arrow(), n("3"), el("C"),
       s(el("O"), "2"), plus(), n("4"), s(el("H"), "2"), el("O")});
  add("Cu^2+(aq) + Zn(s) -> Cu(s) + Zn^2+(aq)",
      {q(el("Cu"), "2+"), state("aq"), plus(), el("Zn"), state("s"), arrow(), el("Cu"), state("s"),
       plus(), q(el("Zn"), "2+"), state("aq")});
  add("HCO3- <=> CO3^2- + H+",
      {el("H"), el("C"), sq(el("O"), "3", "-"), eqm(), el("C"), sq(el("O"), "3", "2-"), plus(),
       q(el("H"), "+")});
  add("Ba(OH)2 + H2SO4 -> BaSO4(s) + 2H2O(l)",
      {el("Ba"), s(grp({el("O"), el("H")}), "2"), plus(), s(el("H"), "2"), el("S"), s(el("O"), "4"),
       arrow(), el("Ba"), el("S"), s(el("O"), "4"), state("s"), plus(), n("2"), s(el("H"), "2"),
       el("O"), state("l")});
  add("NaOH", {el("Na"), el("O"), el("H")});
  add("H3O+", {s(el("H"), "3"), q(el("O"), "+")});
  add("MnO4-", {el("Mn"), sq(el("O"), "4", "-")});
  add("Cr2O7^2-", {s(el("Cr"), "2"), sq(el("O"), "7", "2-")});
  add("2Mg + O2 -> 2MgO", {n("2"), el("Mg"), plus(), s(el("O"), "2"), arrow(), n("2"), el("Mg"), el("O")});
  add("N2O4 <=> 2NO2", {s(el("N"), "2"), s(el("O"), "4"), eqm(), n("2"), el("N"), s(el("O"), "2")});
  add("2SO2 + O2 <=> 2SO3",
      {n("2"), el("S"), s(el("O"), "2"), plus(), s(el("O"), "2"), eqm(), n("2"), el("S"),
       s(el("O"), "3")});
  add("CO + H2O <=> CO2 + H2",
      {el("C"), el("O"), plus(), s(el("H"), "2"), el("O"), eqm(), el("C"), s(el("O"), "2"), plus(),
       s(el("H"), "2")});
  add("NH3 + H2O <=> NH4+ + OH-",
      {el("N"), s(el("H"), "3"), plus(), s(el("H"), "2"), el("O"), eqm(), el("N"), sq(el("H"), "4", "+"),
       plus(), el("O"), q(el("H"), "-")});
  add("10H2O", {n("10"), s(el("H"), "2"), el("O")});
  add("Ca3(PO4)2", {s(el("Ca"), "3"), s(grp({el("P"), s(el("O"), "4")}), "2")});
  add("(CH3)3COH", {s(grp({el("C"), s(el("H"), "3")}), "3"), el("C"), el("O"), el("H")});
  add("U", {el("U")});
  add("He(g)", {el("He"), state("g")});
  add("Hg(l)", {el("Hg"), state("l")});
  add("I2(s) -> I2(g)", {s(el("I"), "2"), state("s"), arrow(), s(el("I"), "2"), state("g")});
  add("NaHCO3 + HCl -> NaCl + H2O + CO2",
      {el("Na"), el("H"), el("C"), s(el("O"), "3"), plus(), el("H"), el("Cl"), arrow(), el("Na"),
       el("Cl"), plus(), s(el("H"), "2"), el("O"), plus(), el("C"), s(el("O"), "2")});
  add("Pb^2+ + 2I- -> PbI2(s)",
      {q(el("Pb"), "2+"), plus(), n("2"), q(el("I"), "-"), arrow(), el("Pb"), s(el("I"), "2"),
       state("s")});
  add("S^{2-}", {q(el("S"), "2-")});
  add("O^2-", {q(el("O"), "2-")});
  add("C2H5OH + 3O2 -> 2CO2 + 3H2O",
      {s(el("C"), "2"), s(el("H"), "5"), el("O"), el("H"), plus(), n("3"), s(el("O"), "2"), arrow(),
       n("2"), el("C"), s(el("O"), "2"), plus(), n("3"), s(el("H"), "2"), el("O")});
  return c;
}

}  // namespace mathkg
