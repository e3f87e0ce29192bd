// mhchem subset: \ce{…} chemical equations parsed into the shared math AST.
//
// Supported: element symbols, coefficients, numeric subscripts, charges
// (attached "Na+" or explicit "SO4^2-" / "Fe^{3+}"), "+" between species,
// "->" and "<=>" arrows, parenthesized groups, and (s) (l) (g) (aq).

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mathkg/ast.hpp"

namespace mathkg {

class ChemError : public std::runtime_error {
 public:
  ChemError(std::size_t offset, std::size_t length, std::vector<std::string> expected,
            const std::string& message)
      : std::runtime_error(message), offset_(offset), length_(length), expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  std::size_t length() const { return length_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::size_t length_;
  std::vector<std::string> expected_;
};

namespace ce {
struct ElementSymbol {
  std::string symbol;
};
struct Coefficient {
  std::string digits;
};
struct ChargeSign {
  char sign;              // '+' or '-'
  std::string magnitude;  // digits, may be empty
};
enum class ArrowKind { forward, equilibrium };
struct Arrow {
  ArrowKind kind;
};
struct StateAnnotation {
  std::string state;  // s, l, g, aq
};
struct Subscript {
  std::string digits;
};
struct Plus {};
struct OpenParen {};
struct CloseParen {};
}  // namespace ce

struct CeToken {
  std::variant<ce::ElementSymbol, ce::Coefficient, ce::ChargeSign, ce::Arrow, ce::StateAnnotation,
               ce::Subscript, ce::Plus, ce::OpenParen, ce::CloseParen>
      value;
  std::size_t offset = 0;
  std::size_t length = 0;
};

// Throws ChemError with offsets relative to `input`.
std::vector<CeToken> tokenize_ce(std::string_view input);

// Parses the interior of a \ce{…} argument into a ChemEquation node.
MathNode parse_ce(std::string_view input);

// mhchem source for a ChemEquation produced by parse_ce.
std::string print_ce(const ChemEquation& eq);

struct CeCase {
  std::string input;
  MathNode expected;
};

// Bundled conformance corpus.
std::vector<CeCase> ce_test_suite();

}  // namespace mathkg
