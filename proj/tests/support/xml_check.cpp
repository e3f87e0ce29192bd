#include "xml_check.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace mathkg::testing {

namespace {

struct Bad : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':'; }
bool name_char(char c) {
  return name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

class Checker {
 public:
  Checker(std::string_view s, std::string_view transparent_attr)
      : s_(s), transparent_(transparent_attr) {}

  XmlCheck run() {
    XmlCheck r;
    try {
      skip_ws();
      if (!at('<')) throw Bad("document does not start with an element");
      element(r);
      skip_ws();
      if (i_ != s_.size()) throw Bad("content after root element");
      r.ok = true;
    } catch (const Bad& e) {
      r.error = std::string(e.what()) + " at " + std::to_string(i_);
    }
    return r;
  }

 private:
  bool at(char c) const { return i_ < s_.size() && s_[i_] == c; }
  void expect(char c) {
    if (!at(c)) throw Bad(std::string("expected '") + c + "'");
    ++i_;
  }
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string name() {
    if (i_ >= s_.size() || !name_start(s_[i_])) throw Bad("bad name");
    std::size_t b = i_;
    while (i_ < s_.size() && name_char(s_[i_])) ++i_;
    return std::string(s_.substr(b, i_ - b));
  }
  void reference() {
    expect('&');
    std::size_t end = s_.find(';', i_);
    if (end == std::string_view::npos) throw Bad("unterminated reference");
    std::string_view ref = s_.substr(i_, end - i_);
    bool good = ref == "amp" || ref == "lt" || ref == "gt" || ref == "quot" || ref == "apos";
    if (!good && ref.size() > 1 && ref[0] == '#') {
      good = true;
      std::size_t k = 1;
      bool hex = ref.size() > 2 && ref[1] == 'x';
      if (hex) k = 2;
      if (k == ref.size()) good = false;
      for (; k < ref.size(); ++k)
        if (!(hex ? std::isxdigit(static_cast<unsigned char>(ref[k]))
                  : std::isdigit(static_cast<unsigned char>(ref[k]))))
          good = false;
    }
    if (!good) throw Bad("bad reference");
    i_ = end + 1;
  }
  // Returns the attribute names.
  std::set<std::string> attributes() {
    std::set<std::string> seen;
    while (true) {
      bool had_ws = i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]));
      skip_ws();
      if (at('>') || at('/')) return seen;
      if (!had_ws) throw Bad("missing space before attribute");
      std::string n = name();
      if (!seen.insert(n).second) throw Bad("duplicate attribute " + n);
      skip_ws();
      expect('=');
      skip_ws();
      if (!at('"') && !at('\'')) throw Bad("unquoted attribute");
      char q = s_[i_++];
      while (i_ < s_.size() && s_[i_] != q) {
        if (s_[i_] == '<') throw Bad("'<' in attribute value");
        if (s_[i_] == '&') reference();
        else ++i_;
      }
      expect(q);
    }
  }
  void element(XmlCheck& r) {
    expect('<');
    std::string tag = name();
    r.elements.insert(tag);
    std::set<std::string> attrs = attributes();
    bool shown = transparent_.empty() || !attrs.count(std::string(transparent_));
    if (shown) r.skeleton += tag + "(";
    if (at('/')) {
      ++i_;
      expect('>');
    } else {
      expect('>');
      while (true) {
        if (i_ >= s_.size()) throw Bad("unclosed <" + tag + ">");
        if (s_.substr(i_, 2) == "</") {
          i_ += 2;
          if (name() != tag) throw Bad("mismatched end tag for <" + tag + ">");
          skip_ws();
          expect('>');
          break;
        }
        if (at('<')) element(r);
        else if (at('&')) reference();
        else ++i_;
      }
    }
    if (shown) r.skeleton += ")";
  }

  std::string_view s_;
  std::string_view transparent_;
  std::size_t i_ = 0;
};

}  // namespace

XmlCheck check_xml(std::string_view doc) { return Checker(doc, {}).run(); }

std::string skeleton_without(std::string_view doc, std::string_view attribute) {
  XmlCheck r = Checker(doc, attribute).run();
  if (!r.ok) throw std::runtime_error("not well-formed: " + r.error);
  return r.skeleton;
}

}  // namespace mathkg::testing
