#include "json.hpp"

#include "mathkg/chem.hpp"
#include "mathkg/texvc.hpp"

namespace mathkg {

namespace {

nlohmann::ordered_json diagnostic_json(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["severity"] = d.severity == Severity::error ? "error" : "warning";
  j["offset"] = d.byte_offset;
  j["length"] = d.length;
  j["expected"] = d.expected;
  j["message"] = d.message;
  return j;
}

}  // namespace

std::string to_json(const Diagnostic& d) { return diagnostic_json(d).dump(); }

std::string to_json(const std::vector<Diagnostic>& ds) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& d : ds) arr.push_back(diagnostic_json(d));
  return arr.dump();
}

MathNode normalize(const MathNode& node) {
  return std::visit(
      [](const auto& n) -> MathNode {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Row>) {
          if (n.children.size() == 1) return normalize(n.children.front());
          Row out;
          out.children.reserve(n.children.size());
          for (const auto& c : n.children) out.children.push_back(normalize(c));
          return out;
        } else if constexpr (std::is_same_v<T, ChemEquation>) {
          ChemEquation out;
          for (const auto& c : n.children) out.children.push_back(normalize(c));
          return out;
        } else if constexpr (std::is_same_v<T, Command>) {
          Command out{n.name, {}};
          for (const auto& c : n.args) out.args.push_back(normalize(c));
          return out;
        } else if constexpr (std::is_same_v<T, Script>) {
          Script out{normalize(*n.base), std::nullopt, std::nullopt};
          if (n.sub) out.sub = Box<MathNode>(normalize(**n.sub));
          if (n.sup) out.sup = Box<MathNode>(normalize(**n.sup));
          return out;
        } else if constexpr (std::is_same_v<T, SemanticMacro>) {
          return SemanticMacro{n.macro_name, normalize(*n.rendered), n.concept_key};
        } else {
          return n;
        }
      },
      node.value);
}

// Printing mirrors the parser's unwrapping rules: a brace group holding a
// single element parses as that element, so a one-child Row must be wrapped
// twice to survive the trip.
namespace {

void print_elem(std::string& out, const MathNode& node);

bool is_text_command(const Command& c) {
  const CommandInfo* info = default_registry().find(c.name);
  return info && info->output_class == OutputClass::text && c.args.size() == 1 &&
         c.args.front().is<Identifier>();
}

void print_seq(std::string& out, const std::vector<MathNode>& items) {
  bool first = true;
  for (const auto& c : items) {
    if (!first) out += ' ';
    first = false;
    print_elem(out, c);
  }
}

void print_group(std::string& out, const MathNode& node) {
  out += '{';
  const Row* r = node.as<Row>();
  if (r && r->children.size() != 1)
    print_seq(out, r->children);
  else
    print_elem(out, node);
  out += '}';
}

void print_elem(std::string& out, const MathNode& node) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Identifier>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Number>) {
          out += n.literal;
        } else if constexpr (std::is_same_v<T, Operator>) {
          out += n.symbol;
        } else if constexpr (std::is_same_v<T, Row>) {
          out += '{';
          print_seq(out, n.children);
          out += '}';
        } else if constexpr (std::is_same_v<T, Command>) {
          if (n.name == "left" && n.args.size() == 3) {
            out += "\\left";
            print_elem(out, n.args[0]);
            out += ' ';
            if (const Row* body = n.args[1].template as<Row>())
              print_seq(out, body->children);
            else
              print_elem(out, n.args[1]);
            out += " \\right";
            print_elem(out, n.args[2]);
          } else if (n.name == "sqrt" && n.args.size() == 2) {
            out += "\\sqrt[";
            const Row* r = n.args[1].template as<Row>();
            if (r && r->children.size() != 1)
              print_seq(out, r->children);
            else
              print_elem(out, n.args[1]);
            out += ']';
            print_group(out, n.args[0]);
          } else if (is_text_command(n)) {
            out += '\\';
            out += n.name;
            out += '{';
            out += n.args.front().template as<Identifier>()->name;
            out += '}';
          } else {
            out += '\\';
            out += n.name;
            for (const auto& a : n.args) print_group(out, a);
          }
        } else if constexpr (std::is_same_v<T, Script>) {
          const MathNode& base = *n.base;
          if (base.is<Script>()) {
            out += '{';
            print_elem(out, base);
            out += '}';
          } else {
            print_elem(out, base);
          }
          if (n.sub) {
            out += '_';
            print_group(out, **n.sub);
          }
          if (n.sup) {
            out += '^';
            print_group(out, **n.sup);
          }
        } else if constexpr (std::is_same_v<T, SemanticMacro>) {
          out += '\\';
          out += n.macro_name;
        } else if constexpr (std::is_same_v<T, ChemEquation>) {
          out += "\\ce{";
          out += print_ce(n);
          out += '}';
        }
      },
      node.value);
}

}  // namespace

std::string print_texvc(const MathNode& node) {
  std::string out;
  const Row* r = node.as<Row>();
  if (r && r->children.size() != 1)
    print_seq(out, r->children);
  else
    print_elem(out, node);
  return out;
}

}  // namespace mathkg
