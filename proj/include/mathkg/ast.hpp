// Language-independent parse tree for texvc formulas.
//
// Nodes are plain values. A tree is built once by the parser (or the chem
// parser) and never mutated afterwards, so sharing a const tree between
// threads is safe.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace mathkg {

// Heap indirection with value semantics, for recursive node members.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&& other) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&& other) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T& operator*() { return *ptr_; }
  T* operator->() { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct MathNode;

// A letter, a registry identifier such as "\alpha" (stored with its
// backslash), or literal text content of \text-like commands.
struct Identifier {
  std::string name;
  std::optional<char32_t> unicode_hint;
  bool upright = false;
  friend bool operator==(const Identifier&, const Identifier&) = default;
};

struct Number {
  std::string literal;
  friend bool operator==(const Number&, const Number&) = default;
};

// Operator characters ("+", "(") and zero-arity operator or spacing
// commands ("\times", "\quad").
struct Operator {
  std::string symbol;
  friend bool operator==(const Operator&, const Operator&) = default;
};

struct Row {
  std::vector<MathNode> children;
  friend bool operator==(const Row&, const Row&) = default;
};

struct Command {
  std::string name;  // registry name, without backslash
  std::vector<MathNode> args;
  friend bool operator==(const Command&, const Command&) = default;
};

struct Script {
  Box<MathNode> base;
  std::optional<Box<MathNode>> sub;
  std::optional<Box<MathNode>> sup;
  friend bool operator==(const Script&, const Script&) = default;
};

struct SemanticMacro {
  std::string macro_name;
  Box<MathNode> rendered;
  std::string concept_key;
  friend bool operator==(const SemanticMacro&, const SemanticMacro&) = default;
};

struct ChemEquation {
  std::vector<MathNode> children;
  friend bool operator==(const ChemEquation&, const ChemEquation&) = default;
};

struct MathNode {
  using Variant = std::variant<Identifier, Number, Operator, Row, Command, Script,
                               SemanticMacro, ChemEquation>;
  Variant value;

  MathNode(Identifier v) : value(std::move(v)) {}     // NOLINT
  MathNode(Number v) : value(std::move(v)) {}         // NOLINT
  MathNode(Operator v) : value(std::move(v)) {}       // NOLINT
  MathNode(Row v) : value(std::move(v)) {}            // NOLINT
  MathNode(Command v) : value(std::move(v)) {}        // NOLINT
  MathNode(Script v) : value(std::move(v)) {}         // NOLINT
  MathNode(SemanticMacro v) : value(std::move(v)) {}  // NOLINT
  MathNode(ChemEquation v) : value(std::move(v)) {}   // NOLINT

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&value);
  }
  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(value);
  }

  friend bool operator==(const MathNode&, const MathNode&) = default;
};

// Canonical S-expression form. Used for hashing, debugging and golden
// output; two trees are structurally equal iff their S-expressions match.
std::string to_sexpr(const MathNode& node);

// Number of nodes in the tree.
std::size_t node_count(const MathNode& node);

// Calls fn on every node, parents before children.
template <typename Fn>
void visit_preorder(const MathNode& node, Fn&& fn);

// Concise constructors, mostly for tests and table-driven suites.
namespace build {
MathNode ident(std::string name);
MathNode upright(std::string name);
MathNode symbol(std::string command, char32_t codepoint);
MathNode num(std::string literal);
MathNode op(std::string symbol);
MathNode row(std::vector<MathNode> children = {});
MathNode cmd(std::string name, std::vector<MathNode> args);
MathNode sub(MathNode base, MathNode subscript);
MathNode sup(MathNode base, MathNode superscript);
MathNode subsup(MathNode base, MathNode subscript, MathNode superscript);
MathNode macro(std::string name, MathNode rendered, std::string concept_key);
MathNode ce(std::vector<MathNode> children);
}  // namespace build

// ---------------------------------------------------------------------------

template <typename Fn>
void visit_preorder(const MathNode& node, Fn&& fn) {
  fn(node);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Row> || std::is_same_v<T, ChemEquation>) {
          for (const auto& c : n.children) visit_preorder(c, fn);
        } else if constexpr (std::is_same_v<T, Command>) {
          for (const auto& c : n.args) visit_preorder(c, fn);
        } else if constexpr (std::is_same_v<T, Script>) {
          visit_preorder(*n.base, fn);
          if (n.sub) visit_preorder(**n.sub, fn);
          if (n.sup) visit_preorder(**n.sup, fn);
        } else if constexpr (std::is_same_v<T, SemanticMacro>) {
          visit_preorder(*n.rendered, fn);
        }
      },
      node.value);
}

}  // namespace mathkg
