#include "mathkg/mathml.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "mathkg/texvc.hpp"
#include "mathkg/utf8.hpp"

namespace mathkg {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

using Attrs = std::vector<std::pair<std::string, std::string>>;

const std::set<std::string, std::less<>> kLimitOperators = {
    "\\sum", "\\prod", "\\coprod", "\\bigcup", "\\bigcap", "\\bigoplus",
    "\\bigotimes", "\\lim", "\\max", "\\min", "\\sup", "\\inf",
};

const std::map<std::string, std::string, std::less<>> kSpaceWidths = {
    {",", "0.167em"}, {":", "0.222em"}, {";", "0.278em"},
    {"!", "-0.167em"}, {"quad", "1em"},  {"qquad", "2em"},
};

const std::map<std::string, std::string, std::less<>> kOperatorText = {
    {"-", "−"}, {"*", "∗"}, {"'", "′"}, {"->", "→"}, {"<=>", "⇌"},
};

const std::map<std::string, std::string, std::less<>> kVariants = {
    {"mathbb", "double-struck"}, {"mathbf", "bold"},   {"mathrm", "normal"},
    {"mathcal", "script"},       {"mathit", "italic"},
};

class Emitter {
 public:
  explicit Emitter(const EmitOptions& opts)
      : opts_(opts),
        registry_(opts.registry ? *opts.registry : default_registry()),
        macros_(opts.macros ? *opts.macros : default_macro_table()) {}

  void node(const MathNode& n, std::string_view variant = {}) {
    std::visit([&](const auto& v) { emit(v, variant); }, n.value);
  }

  std::string take() { return std::move(out_); }

 private:
  void open(std::string_view tag, Attrs attrs = {}) {
    std::sort(attrs.begin(), attrs.end());
    out_ += '<';
    out_ += tag;
    for (const auto& [k, v] : attrs) {
      out_ += ' ';
      out_ += k;
      out_ += "=\"";
      out_ += xml_escape(v);
      out_ += '"';
    }
    out_ += '>';
  }
  void close(std::string_view tag) {
    out_ += "</";
    out_ += tag;
    out_ += '>';
  }
  void leaf(std::string_view tag, std::string_view text, Attrs attrs = {}) {
    open(tag, std::move(attrs));
    out_ += xml_escape(text);
    close(tag);
  }

  const CommandInfo* command_info(std::string_view symbol) const {
    if (symbol.size() < 2 || symbol.front() != '\\') return nullptr;
    return registry_.find(symbol.substr(1));
  }

  void emit(const Identifier& id, std::string_view variant) {
    std::string text;
    if (!id.name.empty() && id.name.front() == '\\' && id.name.size() > 1) {
      const CommandInfo* info = command_info(id.name);
      if (id.unicode_hint)
        text = utf8::encode(*id.unicode_hint);
      else if (info && info->unicode)
        text = utf8::encode(*info->unicode);
      else
        text = id.name.substr(1);
    } else {
      text = id.name;
    }
    Attrs attrs;
    if (!variant.empty()) {
      attrs.emplace_back("mathvariant", std::string(variant));
    } else if (id.upright || is_upper_greek(id)) {
      attrs.emplace_back("mathvariant", "normal");
    }
    leaf("mi", text, std::move(attrs));
  }

  static bool is_upper_greek(const Identifier& id) {
    return id.unicode_hint && *id.unicode_hint >= 0x0391 && *id.unicode_hint <= 0x03A9;
  }

  void emit(const Number& n, std::string_view variant) {
    Attrs attrs;
    if (!variant.empty()) attrs.emplace_back("mathvariant", std::string(variant));
    leaf("mn", n.literal, std::move(attrs));
  }

  std::string operator_text(const Operator& op) const {
    if (const CommandInfo* info = command_info(op.symbol)) {
      if (info->unicode) return utf8::encode(*info->unicode);
      return info->name;
    }
    if (auto it = kOperatorText.find(op.symbol); it != kOperatorText.end()) return it->second;
    return op.symbol;
  }

  void emit(const Operator& op, std::string_view) {
    if (const CommandInfo* info = command_info(op.symbol);
        info && info->output_class == OutputClass::space) {
      auto it = kSpaceWidths.find(info->name);
      open("mspace", {{"width", it != kSpaceWidths.end() ? it->second : "0.167em"}});
      close("mspace");
      return;
    }
    leaf("mo", operator_text(op));
  }

  void fence(const MathNode& n) {
    const Operator* op = n.as<Operator>();
    std::string text = op && op->symbol != "." ? operator_text(*op) : std::string();
    leaf("mo", text, {{"fence", "true"}, {"stretchy", "true"}});
  }

  void emit(const Row& r, std::string_view variant) {
    open("mrow");
    for (const auto& c : r.children) node(c, variant);
    close("mrow");
  }

  void emit(const ChemEquation& eq, std::string_view variant) {
    open("mrow");
    for (const auto& c : eq.children) node(c, variant);
    close("mrow");
  }

  static std::string text_content(const Command& c) {
    if (c.args.empty()) return {};
    if (const auto* id = c.args.front().as<Identifier>()) return id->name;
    return {};
  }

  void emit(const Command& c, std::string_view variant) {
    const std::string& name = c.name;
    const CommandInfo* info = registry_.find(name);
    if (name == "frac" || name == "dfrac" || name == "tfrac") {
      open("mfrac");
      for (const auto& a : c.args) node(a, variant);
      close("mfrac");
    } else if (name == "binom") {
      open("mrow");
      leaf("mo", "(");
      open("mfrac", {{"linethickness", "0"}});
      for (const auto& a : c.args) node(a, variant);
      close("mfrac");
      leaf("mo", ")");
      close("mrow");
    } else if (name == "sqrt") {
      const char* tag = c.args.size() == 2 ? "mroot" : "msqrt";
      open(tag);
      for (const auto& a : c.args) node(a, variant);
      close(tag);
    } else if (name == "left" && c.args.size() == 3) {
      open("mrow");
      fence(c.args[0]);
      node(c.args[1], variant);
      fence(c.args[2]);
      close("mrow");
    } else if (auto v = kVariants.find(name); v != kVariants.end() && c.args.size() == 1) {
      node(c.args.front(), v->second);
    } else if (info && info->output_class == OutputClass::accent && c.args.size() == 1) {
      std::string mark = info->unicode ? utf8::encode(*info->unicode) : std::string();
      if (name == "underline") {
        open("munder", {{"accentunder", "true"}});
        node(c.args.front(), variant);
        leaf("mo", mark);
        close("munder");
      } else {
        open("mover", {{"accent", "true"}});
        node(c.args.front(), variant);
        leaf("mo", mark);
        close("mover");
      }
    } else if (info && info->output_class == OutputClass::text) {
      std::string text = text_content(c);
      if (name == "operatorname") {
        Attrs attrs;
        if (utf8::sequence_length(text, 0) == text.size() && !text.empty())
          attrs.emplace_back("mathvariant", "normal");
        leaf("mi", text, std::move(attrs));
      } else {
        leaf("mtext", text);
      }
    } else {
      open("mrow");
      for (const auto& a : c.args) node(a, variant);
      close("mrow");
    }
  }

  static bool takes_limits(const MathNode& base) {
    if (const auto* op = base.as<Operator>()) return kLimitOperators.count(op->symbol) > 0;
    if (const auto* id = base.as<Identifier>()) return kLimitOperators.count(id->name) > 0;
    return false;
  }

  void emit(const Script& s, std::string_view variant) {
    bool limits = takes_limits(*s.base);
    const char* tag;
    if (s.sub && s.sup)
      tag = limits ? "munderover" : "msubsup";
    else if (s.sub)
      tag = limits ? "munder" : "msub";
    else
      tag = limits ? "mover" : "msup";
    open(tag);
    node(*s.base, variant);
    if (s.sub) node(**s.sub, variant);
    if (s.sup) node(**s.sup, variant);
    close(tag);
  }

  void emit(const SemanticMacro& m, std::string_view variant) {
    if (!opts_.resolve_links) {
      node(*m.rendered, variant);
      return;
    }
    std::optional<std::string> url;
    if (opts_.link_resolver) url = opts_.link_resolver(m.concept_key);
    if (!url) {
      if (const MacroDef* def = macros_.find(m.macro_name); def && !def->fallback_url.empty())
        url = def->fallback_url;
    }
    if (!url)
      throw EmitError("no link target for concept '" + m.concept_key + "' of \\" + m.macro_name);
    open("mrow", {{"href", *url}});
    node(*m.rendered, variant);
    close("mrow");
  }

  const EmitOptions& opts_;
  const CommandRegistry& registry_;
  const MacroTable& macros_;
  std::string out_;
};

}  // namespace

std::string emit_mathml_fragment(const MathNode& ast, const EmitOptions& opts) {
  Emitter e(opts);
  e.node(ast);
  return e.take();
}

std::string emit_mathml(const MathNode& ast, const EmitOptions& opts) {
  std::string body = emit_mathml_fragment(ast, opts);
  std::string tex = opts.tex_source ? *opts.tex_source : print_texvc(ast);
  std::string out;
  out.reserve(body.size() + tex.size() + 160);
  out += "<math display=\"";
  out += opts.display == Display::block ? "block" : "inline";
  out += "\" xmlns=\"";
  out += kMathMLNamespace;
  out += "\"><semantics>";
  out += body;
  out += "<annotation encoding=\"application/x-tex\">";
  out += xml_escape(tex);
  out += "</annotation></semantics></math>";
  return out;
}

}  // namespace mathkg
