#include "mathkg/chem.hpp"

#include "mathkg/utf8.hpp"

namespace mathkg {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

template <typename... Ts>
bool holds_any(const CeToken* t) {
  return t && (std::holds_alternative<Ts>(t->value) || ...);
}

// Parses "[0-9]*[+-]" starting at `from`; returns end or npos.
std::size_t scan_charge(std::string_view s, std::size_t from) {
  std::size_t i = from;
  while (i < s.size() && is_digit(s[i])) ++i;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) return i + 1;
  return std::string_view::npos;
}

}  // namespace

std::vector<CeToken> tokenize_ce(std::string_view s) {
  std::vector<CeToken> out;
  bool space_before = false;
  std::size_t i = 0;
  auto prev = [&]() -> const CeToken* { return out.empty() ? nullptr : &out.back(); };
  auto term_start = [&] { return out.empty() || holds_any<ce::Plus, ce::Arrow>(prev()); };
  auto species_end = [&] {
    return holds_any<ce::ElementSymbol, ce::Subscript, ce::CloseParen>(prev());
  };
  auto emit = [&](auto value, std::size_t start) {
    out.push_back(CeToken{std::move(value), start, i - start});
    space_before = false;
  };

  while (i < s.size()) {
    char c = s[i];
    std::size_t start = i;
    if (is_space(c)) {
      ++i;
      space_before = true;
      continue;
    }
    if (s.substr(i, 3) == "<=>") {
      i += 3;
      emit(ce::Arrow{ce::ArrowKind::equilibrium}, start);
    } else if (s.substr(i, 2) == "->") {
      i += 2;
      emit(ce::Arrow{ce::ArrowKind::forward}, start);
    } else if (c == '+') {
      ++i;
      if (species_end() && !space_before)
        emit(ce::ChargeSign{'+', ""}, start);
      else
        emit(ce::Plus{}, start);
    } else if (c == '-') {
      if (!species_end() || space_before)
        throw ChemError(start, 1, {"species"}, "unexpected '-'");
      ++i;
      emit(ce::ChargeSign{'-', ""}, start);
    } else if (c == '^') {
      if (!species_end() || space_before)
        throw ChemError(start, 1, {"species"}, "charge without a species");
      ++i;
      std::size_t end;
      std::string_view body;
      if (i < s.size() && s[i] == '{') {
        end = scan_charge(s, i + 1);
        if (end == std::string_view::npos || end >= s.size() || s[end] != '}')
          throw ChemError(start, std::min(s.size(), i + 1) - start, {"charge"}, "malformed charge");
        body = s.substr(i + 1, end - i - 1);
        i = end + 1;
      } else {
        end = scan_charge(s, i);
        if (end == std::string_view::npos)
          throw ChemError(start, i - start, {"charge"}, "malformed charge");
        body = s.substr(i, end - i);
        i = end;
      }
      emit(ce::ChargeSign{body.back(), std::string(body.substr(0, body.size() - 1))}, start);
    } else if (is_digit(c)) {
      while (i < s.size() && is_digit(s[i])) ++i;
      std::string digits(s.substr(start, i - start));
      if (term_start()) {
        emit(ce::Coefficient{std::move(digits)}, start);
      } else if (holds_any<ce::ElementSymbol, ce::CloseParen>(prev()) && !space_before) {
        emit(ce::Subscript{std::move(digits)}, start);
      } else {
        throw ChemError(start, i - start, {}, "unexpected number");
      }
    } else if (is_upper(c)) {
      ++i;
      if (i < s.size() && is_lower(s[i])) ++i;
      emit(ce::ElementSymbol{std::string(s.substr(start, i - start))}, start);
    } else if (c == '(') {
      bool after_species = holds_any<ce::ElementSymbol, ce::Subscript, ce::CloseParen, ce::ChargeSign>(prev());
      std::string_view state;
      for (std::string_view st : {"(aq)", "(s)", "(l)", "(g)"}) {
        if (s.substr(i, st.size()) == st) state = st;
      }
      if (after_species && !state.empty()) {
        i += state.size();
        emit(ce::StateAnnotation{std::string(state.substr(1, state.size() - 2))}, start);
      } else {
        ++i;
        emit(ce::OpenParen{}, start);
      }
    } else if (c == ')') {
      ++i;
      emit(ce::CloseParen{}, start);
    } else if (is_lower(c)) {
      throw ChemError(start, 1, {"element symbol"}, "malformed element symbol");
    } else {
      throw ChemError(start, utf8::sequence_length(s, start), {}, "unexpected character");
    }
  }
  return out;
}

MathNode parse_ce(std::string_view input) {
  std::vector<CeToken> tokens = tokenize_ce(input);
  if (tokens.empty()) throw ChemError(0, input.size(), {"species"}, "empty chemical equation");

  struct Frame {
    std::vector<MathNode> items;
    std::size_t open_offset;
  };
  std::vector<Frame> frames(1, Frame{{}, 0});
  bool expect_species = true;

  for (const CeToken& tok : tokens) {
    auto& items = frames.back().items;
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, ce::Coefficient>) {
            items.push_back(Number{t.digits});
          } else if constexpr (std::is_same_v<T, ce::ElementSymbol>) {
            items.push_back(Identifier{t.symbol, std::nullopt, true});
            expect_species = false;
          } else if constexpr (std::is_same_v<T, ce::Subscript>) {
            MathNode base = std::move(items.back());
            items.pop_back();
            items.push_back(Script{std::move(base), Box<MathNode>(Number{t.digits}), std::nullopt});
          } else if constexpr (std::is_same_v<T, ce::ChargeSign>) {
            MathNode charge = t.magnitude.empty()
                                  ? MathNode(Operator{std::string(1, t.sign)})
                                  : MathNode(Row{{Number{t.magnitude}, Operator{std::string(1, t.sign)}}});
            MathNode last = std::move(items.back());
            items.pop_back();
            if (auto* sc = std::get_if<Script>(&last.value)) {
              if (sc->sup) throw ChemError(tok.offset, tok.length, {}, "double charge");
              sc->sup = Box<MathNode>(std::move(charge));
              items.push_back(std::move(last));
            } else {
              items.push_back(Script{std::move(last), std::nullopt, Box<MathNode>(std::move(charge))});
            }
          } else if constexpr (std::is_same_v<T, ce::StateAnnotation>) {
            items.push_back(Command{"text", {Identifier{"(" + t.state + ")", std::nullopt, true}}});
          } else if constexpr (std::is_same_v<T, ce::OpenParen>) {
            frames.push_back(Frame{{}, tok.offset});
          } else if constexpr (std::is_same_v<T, ce::CloseParen>) {
            if (frames.size() == 1) throw ChemError(tok.offset, 1, {}, "unbalanced parenthesis");
            Frame f = std::move(frames.back());
            frames.pop_back();
            if (f.items.empty()) throw ChemError(f.open_offset, tok.offset + 1 - f.open_offset, {"species"}, "empty group");
            std::vector<MathNode> group;
            group.push_back(Operator{"("});
            for (auto& n : f.items) group.push_back(std::move(n));
            group.push_back(Operator{")"});
            frames.back().items.push_back(Row{std::move(group)});
            expect_species = false;
          } else {
            // Plus or Arrow
            if (frames.size() > 1) {
              std::size_t open = frames.back().open_offset;
              throw ChemError(open, input.size() - open, {")"}, "unbalanced parenthesis");
            }
            if (expect_species) throw ChemError(tok.offset, tok.length, {"species"}, "missing species");
            std::string sym;
            if constexpr (std::is_same_v<T, ce::Plus>) {
              sym = "+";
            } else {
              sym = t.kind == ce::ArrowKind::forward ? "->" : "<=>";
            }
            items.push_back(Operator{std::move(sym)});
            expect_species = true;
          }
        },
        tok.value);
  }
  if (frames.size() > 1) {
    std::size_t open = frames.back().open_offset;
    throw ChemError(open, input.size() - open, {")"}, "unbalanced parenthesis");
  }
  if (expect_species) throw ChemError(input.size(), 0, {"species"}, "missing species");
  return ChemEquation{std::move(frames.front().items)};
}

namespace {

void print_charge(std::string& out, const MathNode& charge) {
  if (auto* op = charge.as<Operator>()) {
    out += op->symbol;
  } else if (auto* r = charge.as<Row>()) {
    for (const auto& c : r->children) {
      if (auto* n = c.as<Number>()) out += n->literal;
      if (auto* o = c.as<Operator>()) out += o->symbol;
    }
  }
}

void print_part(std::string& out, const MathNode& node) {
  if (auto* n = node.as<Number>()) {
    out += n->literal;
  } else if (auto* id = node.as<Identifier>()) {
    out += id->name;
  } else if (auto* sc = node.as<Script>()) {
    print_part(out, *sc->base);
    if (sc->sub) print_part(out, **sc->sub);
    if (sc->sup) {
      out += '^';
      print_charge(out, **sc->sup);
    }
  } else if (auto* r = node.as<Row>()) {
    for (const auto& c : r->children) {
      if (auto* o = c.as<Operator>())
        out += o->symbol;
      else
        print_part(out, c);
    }
  } else if (auto* cmd = node.as<Command>()) {
    if (!cmd->args.empty()) {
      if (auto* id = cmd->args.front().as<Identifier>()) out += id->name;
    }
  }
}

}  // namespace

std::string print_ce(const ChemEquation& eq) {
  std::string out;
  for (const auto& child : eq.children) {
    if (auto* op = child.as<Operator>()) {
      out += ' ';
      out += op->symbol;
      out += ' ';
    } else {
      print_part(out, child);
    }
  }
  return out;
}

}  // namespace mathkg
