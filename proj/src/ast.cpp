#include "mathkg/ast.hpp"

#include <cstdio>

namespace mathkg {

namespace {

void append_quoted(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

void write_sexpr(std::string& out, const MathNode& node) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Identifier>) {
          out += "(mi ";
          append_quoted(out, n.name);
          if (n.unicode_hint) {
            char buf[16];
            std::snprintf(buf, sizeof buf, " U+%04X", static_cast<unsigned>(*n.unicode_hint));
            out += buf;
          }
          if (n.upright) out += " upright";
          out += ')';
        } else if constexpr (std::is_same_v<T, Number>) {
          out += "(mn ";
          append_quoted(out, n.literal);
          out += ')';
        } else if constexpr (std::is_same_v<T, Operator>) {
          out += "(mo ";
          append_quoted(out, n.symbol);
          out += ')';
        } else if constexpr (std::is_same_v<T, Row>) {
          out += "(row";
          for (const auto& c : n.children) {
            out += ' ';
            write_sexpr(out, c);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, Command>) {
          out += "(cmd ";
          append_quoted(out, n.name);
          for (const auto& c : n.args) {
            out += ' ';
            write_sexpr(out, c);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, Script>) {
          out += "(script ";
          write_sexpr(out, *n.base);
          out += ' ';
          if (n.sub) write_sexpr(out, **n.sub); else out += '_';
          out += ' ';
          if (n.sup) write_sexpr(out, **n.sup); else out += '_';
          out += ')';
        } else if constexpr (std::is_same_v<T, SemanticMacro>) {
          out += "(macro ";
          append_quoted(out, n.macro_name);
          out += ' ';
          append_quoted(out, n.concept_key);
          out += ' ';
          write_sexpr(out, *n.rendered);
          out += ')';
        } else if constexpr (std::is_same_v<T, ChemEquation>) {
          out += "(ce";
          for (const auto& c : n.children) {
            out += ' ';
            write_sexpr(out, c);
          }
          out += ')';
        }
      },
      node.value);
}

}  // namespace

std::string to_sexpr(const MathNode& node) {
  std::string out;
  write_sexpr(out, node);
  return out;
}

std::size_t node_count(const MathNode& node) {
  std::size_t n = 0;
  visit_preorder(node, [&](const MathNode&) { ++n; });
  return n;
}

namespace build {

MathNode ident(std::string name) { return Identifier{std::move(name), std::nullopt, false}; }
MathNode upright(std::string name) { return Identifier{std::move(name), std::nullopt, true}; }
MathNode symbol(std::string command, char32_t codepoint) {
  return Identifier{std::move(command), codepoint, false};
}
MathNode num(std::string literal) { return Number{std::move(literal)}; }
MathNode op(std::string symbol) { return Operator{std::move(symbol)}; }
MathNode row(std::vector<MathNode> children) { return Row{std::move(children)}; }
MathNode cmd(std::string name, std::vector<MathNode> args) {
  return Command{std::move(name), std::move(args)};
}
MathNode sub(MathNode base, MathNode subscript) {
  return Script{std::move(base), Box<MathNode>(std::move(subscript)), std::nullopt};
}
MathNode sup(MathNode base, MathNode superscript) {
  return Script{std::move(base), std::nullopt, Box<MathNode>(std::move(superscript))};
}
MathNode subsup(MathNode base, MathNode subscript, MathNode superscript) {
  return Script{std::move(base), Box<MathNode>(std::move(subscript)),
                Box<MathNode>(std::move(superscript))};
}
MathNode macro(std::string name, MathNode rendered, std::string concept_key) {
  return SemanticMacro{std::move(name), std::move(rendered), std::move(concept_key)};
}
MathNode ce(std::vector<MathNode> children) { return ChemEquation{std::move(children)}; }

}  // namespace build

}  // namespace mathkg
