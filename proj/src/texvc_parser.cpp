// Recursive-descent implementation of the texvc grammar.
//
// The grammar is a PEG; ordered choice never needs to backtrack because
// every alternative is selected by its first byte:
//
//   Formula   <- Sequence EOF
//   Sequence  <- (Space* Element)* Space*
//   Element   <- (Atom / Empty) (Space* ('_' Arg / '^' Arg))*   at most one of each
//   Atom      <- Group / Number / Letter / OpChar / Control
//   Group     <- '{' Sequence '}'
//   Number    <- [0-9]+ ('.' [0-9]+)?
//   Control   <- '\' ([a-zA-Z]+ / .) CommandTail
//   Arg       <- Group / [0-9] / [a-zA-Z] / Control / OpChar (scripts only)
//   Left      <- '\left' Delim Sequence '\right' Delim
//
// Errors carry the start of the failing construct and extend to the point
// where the parser gave up.

#include <algorithm>
#include <cctype>
#include <map>

#include "mathkg/chem.hpp"
#include "mathkg/macros.hpp"
#include "mathkg/texvc.hpp"
#include "mathkg/utf8.hpp"

namespace mathkg {

ParseError::ParseError(Diagnostic d) : std::runtime_error(d.message), diag_(std::move(d)) {}

namespace {

constexpr int kMaxDepth = 200;
constexpr std::string_view kOpChars = "+-=<>()[],;:!/|'*.?@";

// Deprecated texvc aliases that expand to a fixed replacement.
const std::map<std::string, std::string, std::less<>> kAliasExpansions = {
    {"R", "\\mathbb{R}"},       {"N", "\\mathbb{N}"},       {"Z", "\\mathbb{Z}"},
    {"Q", "\\mathbb{Q}"},       {"C", "\\mathbb{C}"},       {"Reals", "\\mathbb{R}"},
    {"Complex", "\\mathbb{C}"}, {"natnums", "\\mathbb{N}"},
};

// Deprecated aliases that rename a registry command.
const std::map<std::string, std::string, std::less<>> kAliasRenames = {
    {"and", "land"}, {"or", "lor"}, {"part", "partial"}, {"bold", "mathbf"},
};

const std::map<std::string, std::string, std::less<>> kDelimiterCommands = {
    {"{", "\\{"},           {"}", "\\}"},           {"|", "\\|"},
    {"langle", "\\langle"}, {"rangle", "\\rangle"}, {"lfloor", "\\lfloor"},
    {"rfloor", "\\rfloor"}, {"lceil", "\\lceil"},   {"rceil", "\\rceil"},
};

bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_op_char(char c) { return kOpChars.find(c) != std::string_view::npos; }

struct Failure {
  Diagnostic diag;
};

class Parser {
 public:
  Parser(std::string_view input, const CommandRegistry& registry, const MacroTable* macros)
      : in_(input), registry_(registry), macros_(macros) {}

  MathNode parse_formula() {
    auto items = parse_sequence(Stop::eof);
    if (items.size() == 1) return std::move(items.front());
    return Row{std::move(items)};
  }

  std::vector<Diagnostic> take_warnings() { return std::move(warnings_); }

 private:
  enum class Stop { eof, brace, bracket, right };

  class DepthGuard {
   public:
    DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) p_.fail(p_.pos_, 1, {}, "nesting too deep");
    }
    ~DepthGuard() { --p_.depth_; }

   private:
    Parser& p_;
  };

  [[noreturn]] void fail(std::size_t offset, std::size_t length, std::vector<std::string> expected,
                         std::string message) const {
    offset = std::min(offset, in_.size());
    length = std::min(length, in_.size() - offset);
    throw Failure{Diagnostic{Severity::error, offset, length, std::move(expected), std::move(message)}};
  }

  void warn(std::size_t offset, std::size_t length, std::string message) {
    warnings_.push_back(Diagnostic{Severity::warning, offset, length, {}, std::move(message)});
  }

  bool eof() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }

  void skip_ws() {
    while (!eof() && is_space(peek())) ++pos_;
  }

  bool at_control_word(std::string_view word) const {
    if (pos_ + 1 + word.size() > in_.size()) return false;
    if (in_[pos_] != '\\' || in_.substr(pos_ + 1, word.size()) != word) return false;
    std::size_t after = pos_ + 1 + word.size();
    return after >= in_.size() || !is_letter(in_[after]);
  }

  std::vector<MathNode> parse_sequence(Stop stop) {
    std::vector<MathNode> items;
    while (true) {
      skip_ws();
      if (eof()) return items;
      char c = peek();
      if (c == '}') {
        if (stop == Stop::brace) return items;
        fail(pos_, 1, {"end of input"}, "unmatched '}'");
      }
      if (c == ']' && stop == Stop::bracket) return items;
      if (stop == Stop::right && at_control_word("right")) return items;
      items.push_back(parse_element());
    }
  }

  MathNode parse_element() {
    DepthGuard guard(*this);
    std::optional<MathNode> base;
    char c = peek();
    if (c == '^' || c == '_') {
      warn(pos_, 1, "script without a base");
      base = Row{};
    } else {
      base = parse_atom();
    }
    std::optional<Box<MathNode>> sub;
    std::optional<Box<MathNode>> sup;
    while (true) {
      skip_ws();
      if (eof()) break;
      c = peek();
      if (c != '^' && c != '_') break;
      std::size_t at = pos_;
      auto& slot = c == '^' ? sup : sub;
      if (slot) fail(at, 1, {}, c == '^' ? "double superscript" : "double subscript");
      ++pos_;
      slot = parse_arg(at, true);
    }
    if (!sub && !sup) return std::move(*base);
    return Script{std::move(*base), std::move(sub), std::move(sup)};
  }

  MathNode parse_atom() {
    char c = peek();
    if (c == '{') return parse_group();
    if (is_digit(c)) return parse_number();
    if (is_letter(c)) {
      ++pos_;
      return Identifier{std::string(1, c), std::nullopt, false};
    }
    if (c == '\\') return parse_control();
    if (is_op_char(c)) {
      ++pos_;
      return Operator{std::string(1, c)};
    }
    fail(pos_, utf8::sequence_length(in_, pos_), {}, "unexpected character");
  }

  Row parse_group() {
    DepthGuard guard(*this);
    std::size_t start = pos_;
    ++pos_;
    auto items = parse_sequence(Stop::brace);
    if (eof()) fail(start, in_.size() - start, {"}"}, "unbalanced brace: missing '}'");
    ++pos_;
    return Row{std::move(items)};
  }

  MathNode parse_number() {
    std::size_t start = pos_;
    while (!eof() && is_digit(peek())) ++pos_;
    if (pos_ + 1 < in_.size() && in_[pos_] == '.' && is_digit(in_[pos_ + 1])) {
      ++pos_;
      while (!eof() && is_digit(peek())) ++pos_;
    }
    return Number{std::string(in_.substr(start, pos_ - start))};
  }

  // A required argument for a command or script that started at `owner`.
  MathNode parse_arg(std::size_t owner, bool script) {
    DepthGuard guard(*this);
    skip_ws();
    auto missing = [&]() -> MathNode {
      fail(owner, pos_ - owner, {"argument"}, "missing required argument");
    };
    if (eof()) return missing();
    char c = peek();
    if (c == '{') {
      Row group = parse_group();
      if (group.children.size() == 1) return std::move(group.children.front());
      return group;
    }
    if (is_digit(c)) {
      ++pos_;
      return Number{std::string(1, c)};
    }
    if (is_letter(c)) {
      ++pos_;
      return Identifier{std::string(1, c), std::nullopt, false};
    }
    if (c == '\\' && !at_control_word("right")) return parse_control();
    if (script && is_op_char(c)) {
      ++pos_;
      return Operator{std::string(1, c)};
    }
    return missing();
  }

  // Reads "{…}" verbatim, balancing braces and honoring backslash escapes.
  // Returns the interior and sets content_start to its first byte.
  std::string parse_raw_group(std::size_t owner, std::size_t& content_start) {
    skip_ws();
    if (eof() || peek() != '{') fail(owner, pos_ - owner, {"{"}, "expected '{'");
    std::size_t open = pos_;
    content_start = ++pos_;
    int depth = 1;
    while (!eof()) {
      char c = peek();
      if (c == '\\' && pos_ + 1 < in_.size()) {
        pos_ += 1 + utf8::sequence_length(in_, pos_ + 1);
        continue;
      }
      if (c == '{') ++depth;
      if (c == '}' && --depth == 0) {
        std::string content(in_.substr(content_start, pos_ - content_start));
        ++pos_;
        return content;
      }
      ++pos_;
    }
    fail(open, in_.size() - open, {"}"}, "unbalanced brace: missing '}'");
  }

  std::string read_control_name(std::size_t start) {
    ++pos_;  // backslash
    if (eof()) fail(start, 1, {"supported command"}, "incomplete control sequence");
    std::size_t name_start = pos_;
    if (is_letter(peek())) {
      while (!eof() && is_letter(peek())) ++pos_;
    } else {
      pos_ += utf8::sequence_length(in_, pos_);
    }
    return std::string(in_.substr(name_start, pos_ - name_start));
  }

  MathNode parse_control() {
    std::size_t start = pos_;
    std::string name = read_control_name(start);
    std::size_t token_len = pos_ - start;

    if (macros_) {
      if (const MacroDef* def = macros_->find(name))
        return SemanticMacro{def->name, def->rendered, def->concept_key};
    }

    const CommandInfo* info = registry_.find(name);
    if (!info) {
      if (auto it = kAliasExpansions.find(name); it != kAliasExpansions.end()) {
        warn(start, token_len, "deprecated alias \\" + name + ", use " + it->second);
        Parser sub(it->second, registry_, nullptr);
        return sub.parse_formula();
      }
      if (auto it = kAliasRenames.find(name); it != kAliasRenames.end()) {
        info = registry_.find(it->second);
        if (info) warn(start, token_len, "deprecated alias \\" + name + ", use \\" + it->second);
      }
    }
    if (!info) fail(start, token_len, {"supported command"}, "unknown command \\" + name);
    name = info->name;

    if (name == "left") return parse_left(start);
    if (name == "right") fail(start, token_len, {}, "\\right without matching \\left");
    if (name == "ce") return parse_chem(start);
    if (name == "sqrt") return parse_sqrt(start);

    if (info->arity == 0) {
      switch (info->output_class) {
        case OutputClass::identifier:
          return Identifier{"\\" + name, info->unicode, false};
        default:
          return Operator{"\\" + name};
      }
    }
    if (info->output_class == OutputClass::text) {
      std::size_t content_start = 0;
      std::string raw = parse_raw_group(start, content_start);
      return Command{name, {Identifier{std::move(raw), std::nullopt, true}}};
    }
    std::vector<MathNode> args;
    args.reserve(static_cast<std::size_t>(info->arity));
    for (int i = 0; i < info->arity; ++i) args.push_back(parse_arg(start, false));
    return Command{name, std::move(args)};
  }

  MathNode parse_delimiter(std::size_t owner) {
    skip_ws();
    if (eof()) fail(owner, pos_ - owner, {"delimiter"}, "missing delimiter");
    char c = peek();
    if (std::string_view("()[]|./").find(c) != std::string_view::npos) {
      ++pos_;
      return Operator{std::string(1, c)};
    }
    if (c == '\\') {
      std::size_t start = pos_;
      std::string name = read_control_name(start);
      if (auto it = kDelimiterCommands.find(name); it != kDelimiterCommands.end())
        return Operator{it->second};
      fail(start, pos_ - start, {"delimiter"}, "invalid delimiter \\" + name);
    }
    fail(pos_, utf8::sequence_length(in_, pos_), {"delimiter"}, "invalid delimiter");
  }

  MathNode parse_left(std::size_t start) {
    DepthGuard guard(*this);
    MathNode open = parse_delimiter(start);
    auto body = parse_sequence(Stop::right);
    if (!at_control_word("right"))
      fail(start, in_.size() - start, {"\\right"}, "\\left without matching \\right");
    pos_ += 6;
    MathNode close = parse_delimiter(start);
    std::vector<MathNode> args;
    args.push_back(std::move(open));
    args.push_back(Row{std::move(body)});
    args.push_back(std::move(close));
    return Command{"left", std::move(args)};
  }

  MathNode parse_sqrt(std::size_t start) {
    skip_ws();
    std::optional<MathNode> index;
    if (!eof() && peek() == '[') {
      DepthGuard guard(*this);
      std::size_t open = pos_;
      ++pos_;
      auto items = parse_sequence(Stop::bracket);
      if (eof()) fail(open, in_.size() - open, {"]"}, "unbalanced bracket: missing ']'");
      ++pos_;
      if (items.size() == 1)
        index = std::move(items.front());
      else
        index = Row{std::move(items)};
    }
    std::vector<MathNode> args;
    args.push_back(parse_arg(start, false));
    if (index) args.push_back(std::move(*index));
    return Command{"sqrt", std::move(args)};
  }

  MathNode parse_chem(std::size_t start) {
    std::size_t content_start = 0;
    std::string raw = parse_raw_group(start, content_start);
    try {
      return parse_ce(raw);
    } catch (const ChemError& e) {
      fail(content_start + e.offset(), e.length(), e.expected(), e.what());
    }
  }

  std::string_view in_;
  const CommandRegistry& registry_;
  const MacroTable* macros_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::vector<Diagnostic> warnings_;
};

}  // namespace

ParseResult parse_texvc(std::string_view input, const ParseOptions& opts) {
  if (input.size() > kMaxInputBytes) {
    return ParseResult(Diagnostic{Severity::error, 0, 0, {},
                                  "input exceeds " + std::to_string(kMaxInputBytes) + " bytes"});
  }
  if (auto bad = utf8::first_invalid(input)) {
    return ParseResult(Diagnostic{Severity::error, *bad, 1, {}, "invalid UTF-8"});
  }
  const CommandRegistry& registry = opts.registry ? *opts.registry : default_registry();
  Parser parser(input, registry, opts.macros);
  try {
    MathNode tree = parser.parse_formula();
    return ParseResult(std::move(tree), parser.take_warnings());
  } catch (const Failure& f) {
    return ParseResult(f.diag);
  }
}

MathNode parse_or_throw(std::string_view input, const ParseOptions& opts) {
  ParseResult r = parse_texvc(input, opts);
  if (!r) throw ParseError(r.error());
  return r.tree();
}

std::vector<Diagnostic> validate(std::string_view input, const ParseOptions& opts) {
  const CommandRegistry& registry = opts.registry ? *opts.registry : default_registry();
  if (input.size() > kMaxInputBytes || utf8::first_invalid(input)) {
    return {parse_texvc(input, opts).error()};
  }
  Parser parser(input, registry, opts.macros);
  try {
    parser.parse_formula();
    return parser.take_warnings();
  } catch (const Failure& f) {
    std::vector<Diagnostic> out{f.diag};
    for (auto& w : parser.take_warnings()) out.push_back(std::move(w));
    return out;
  }
}

}  // namespace mathkg
