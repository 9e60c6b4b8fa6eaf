#include <map>
#include <optional>
#include <string>

#include "ontoform/error.hpp"
#include "ontoform/turtle.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }

// PN_CHARS_BASE / PN_CHARS_U approximations: any non-ASCII byte is accepted.
bool is_name_start(char c) { return is_alpha(c) || c == '_' || is_high(c); }
bool is_name_char(char c) { return is_name_start(c) || is_digit(c) || c == '-'; }

bool has_scheme(std::string_view v) {
  auto colon = v.find(':');
  if (colon == std::string_view::npos || colon == 0 || !is_alpha(v[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = v[i];
    if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.')) return false;
  }
  return true;
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

struct Mark {
  std::size_t pos;
  std::size_t line;
  std::size_t column;
};

struct Name {
  std::string prefix;
  bool has_colon = false;
  std::string local;
};

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : text_(text) {
    prefixes_["rdf"] = std::string(vocab::rdf::ns);
    prefixes_["rdfs"] = std::string(vocab::rdfs::ns);
    prefixes_["owl"] = std::string(vocab::owl::ns);
  }

  Graph run() {
    // A UTF-8 byte order mark is tolerated.
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    for (;;) {
      skip_ws();
      if (at_end()) break;
      statement();
    }
    return std::move(graph_);
  }

 private:
  // -- cursor -------------------------------------------------------------

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  Mark mark() const { return {pos_, line_, column_}; }

  void advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;
    }
  }

  // Only used to give back ASCII bytes read on the current line.
  void retreat(std::size_t n) {
    pos_ -= n;
    column_ -= n;
  }

  [[noreturn]] void fail(ParseErrorKind kind, const Mark& at, const std::string& message) const {
    throw ParseError(kind, at.line, at.column, message);
  }
  [[noreturn]] void fail(ParseErrorKind kind, const std::string& message) const {
    fail(kind, mark(), message);
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (is_ws(c)) {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (peek() != c || at_end()) fail(ParseErrorKind::Syntax, std::string("expected ") + what);
    advance();
  }

  bool keyword_ahead(std::string_view word) const {
    if (text_.size() - pos_ < word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      char a = text_[pos_ + i];
      if (a >= 'a' && a <= 'z') a = static_cast<char>(a - 'a' + 'A');
      if (a != word[i]) return false;
    }
    char next = peek(word.size());
    return is_ws(next) || next == '\0';
  }

  // -- directives and statements -----------------------------------------

  void statement() {
    if (peek() == '@') {
      at_directive();
      return;
    }
    if (keyword_ahead("PREFIX")) {
      for (int i = 0; i < 6; ++i) advance();
      prefix_body();
      return;
    }
    if (keyword_ahead("BASE")) fail(ParseErrorKind::Syntax, "base directives are not supported");
    triples();
    expect('.', "'.' at end of statement");
  }

  void at_directive() {
    Mark start = mark();
    advance();
    std::string word;
    while (is_alpha(peek())) {
      word += peek();
      advance();
    }
    if (word == "prefix") {
      prefix_body();
      expect('.', "'.' after @prefix directive");
    } else if (word == "base") {
      fail(ParseErrorKind::Syntax, start, "@base is not supported");
    } else {
      fail(ParseErrorKind::Syntax, start, "unknown directive '@" + word + "'");
    }
  }

  void prefix_body() {
    skip_ws();
    Mark start = mark();
    std::string prefix;
    if (is_name_start(peek()) || is_digit(peek())) {
      if (is_digit(peek()) || peek() == '_')
        fail(ParseErrorKind::Syntax, "prefix must start with a letter");
      while (is_name_char(peek()) || peek() == '.') {
        prefix += peek();
        advance();
      }
    }
    if (peek() != ':') fail(ParseErrorKind::Syntax, "expected ':' after prefix name");
    if (!prefix.empty() && prefix.back() == '.')
      fail(ParseErrorKind::Syntax, start, "prefix may not end with '.'");
    advance();
    skip_ws();
    if (peek() != '<') fail(ParseErrorKind::Syntax, "expected <IRI> in prefix declaration");
    std::string base = iri_ref();
    prefixes_[prefix] = base;
    graph_.set_namespace(prefix, base);
  }

  void triples() {
    skip_ws();
    if (peek() == '[') {
      Mark start = mark();
      bool empty = false;
      Term subject = blank_property_list(&empty);
      skip_ws();
      if (peek() == '.') {
        if (empty) fail(ParseErrorKind::Syntax, start, "'[]' needs a predicate list");
        return;
      }
      predicate_object_list(subject);
      return;
    }
    Term subject = subject_term();
    predicate_object_list(subject);
  }

  Term subject_term() {
    skip_ws();
    char c = peek();
    if (at_end()) fail(ParseErrorKind::Syntax, "unexpected end of input");
    if (c == '<') return Term::iri(iri_ref());
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '(') return collection();
    if (c == '"' || c == '\'' || is_digit(c) || c == '+' || c == '-' ||
        (c == '.' && is_digit(peek(1))))
      fail(ParseErrorKind::Syntax, "a literal cannot be a subject");
    Mark start = mark();
    Name name = read_name();
    if (!name.has_colon) {
      if (name.prefix == "true" || name.prefix == "false")
        fail(ParseErrorKind::Syntax, start, "a literal cannot be a subject");
      fail(ParseErrorKind::Syntax, start, "expected a subject");
    }
    return resolve(name, start);
  }

  void predicate_object_list(const Term& subject) {
    for (;;) {
      Term verb = verb_term();
      object_list(subject, verb);
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        advance();
        skip_ws();
      }
      if (peek() == '.' || peek() == ']' || at_end()) return;
    }
  }

  Term verb_term() {
    skip_ws();
    if (at_end()) fail(ParseErrorKind::Syntax, "expected a predicate");
    if (peek() == '<') return Term::iri(iri_ref());
    Mark start = mark();
    if ((!is_name_start(peek()) && peek() != ':') || (peek() == '_' && peek(1) == ':'))
      fail(ParseErrorKind::Syntax, "expected a predicate");
    Name name = read_name();
    if (!name.has_colon) {
      if (name.prefix == "a") return iri(vocab::rdf::type);
      fail(ParseErrorKind::Syntax, start, "expected a predicate, got '" + name.prefix + "'");
    }
    return resolve(name, start);
  }

  void object_list(const Term& subject, const Term& predicate) {
    for (;;) {
      Term obj = object_term();
      graph_.insert(subject, predicate, obj);
      skip_ws();
      if (peek() != ',') return;
      advance();
    }
  }

  Term object_term() {
    skip_ws();
    if (at_end()) fail(ParseErrorKind::Syntax, "expected an object");
    char c = peek();
    if (c == '<') return Term::iri(iri_ref());
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '[') return blank_property_list(nullptr);
    if (c == '(') return collection();
    if (c == '"' || c == '\'') return string_literal();
    if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(peek(1))))
      return numeric_literal();
    Mark start = mark();
    if (!is_name_start(c) && c != ':') fail(ParseErrorKind::Syntax, "expected an object");
    Name name = read_name();
    if (!name.has_colon) {
      if (name.prefix == "true" || name.prefix == "false")
        return Term::literal(name.prefix, vocab::xsd::boolean);
      fail(ParseErrorKind::Syntax, start, "expected an object, got '" + name.prefix + "'");
    }
    return resolve(name, start);
  }

  // -- node syntax --------------------------------------------------------

  Term blank_property_list(bool* empty) {
    advance();  // '['
    Term node = graph_.fresh_blank();
    skip_ws();
    if (peek() == ']') {
      advance();
      if (empty) *empty = true;
      return node;
    }
    predicate_object_list(node);
    expect(']', "']' to close blank node");
    return node;
  }

  Term collection() {
    advance();  // '('
    std::vector<Term> items;
    for (;;) {
      skip_ws();
      if (at_end()) fail(ParseErrorKind::Syntax, "unterminated collection");
      if (peek() == ')') {
        advance();
        break;
      }
      items.push_back(object_term());
    }
    if (items.empty()) return iri(vocab::rdf::nil);
    const Term first = iri(vocab::rdf::first);
    const Term rest = iri(vocab::rdf::rest);
    std::vector<Term> cells;
    cells.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(graph_.fresh_blank());
    for (std::size_t i = 0; i < items.size(); ++i) {
      graph_.insert(cells[i], first, items[i]);
      graph_.insert(cells[i], rest, i + 1 < cells.size() ? cells[i + 1] : iri(vocab::rdf::nil));
    }
    return cells.front();
  }

  Term blank_label() {
    advance();
    advance();  // "_:"
    std::string label;
    if (!(is_name_start(peek()) || is_digit(peek())))
      fail(ParseErrorKind::Syntax, "expected blank node label after '_:'");
    while (is_name_char(peek()) || peek() == '.') {
      label += peek();
      advance();
    }
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      retreat(1);
    }
    auto it = blanks_.find(label);
    if (it != blanks_.end()) return it->second;
    Term fresh = graph_.fresh_blank();
    blanks_.emplace(label, fresh);
    return fresh;
  }

  std::string iri_ref() {
    Mark start = mark();
    advance();  // '<'
    std::string value;
    for (;;) {
      if (at_end()) fail(ParseErrorKind::BadIri, start, "unterminated IRI");
      char c = peek();
      if (c == '>') {
        advance();
        break;
      }
      if (is_ws(c) || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`')
        fail(ParseErrorKind::BadIri, "character not allowed in IRI");
      if (c == '\\') {
        Mark esc = mark();
        advance();
        char kind = peek();
        if (kind != 'u' && kind != 'U') fail(ParseErrorKind::BadIri, esc, "invalid IRI escape");
        advance();
        value += read_hex_escape(kind == 'u' ? 4 : 8, esc, ParseErrorKind::BadIri);
        continue;
      }
      value += c;
      advance();
    }
    if (!has_scheme(value))
      fail(ParseErrorKind::BadIri, start, "relative IRI <" + value + "> (no base resolution)");
    return value;
  }

  std::string read_hex_escape(int digits, const Mark& at, ParseErrorKind kind) {
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      char h = peek();
      int v;
      if (h >= '0' && h <= '9') v = h - '0';
      else if (h >= 'a' && h <= 'f') v = h - 'a' + 10;
      else if (h >= 'A' && h <= 'F') v = h - 'A' + 10;
      else fail(kind, at, "malformed \\u escape");
      cp = cp * 16 + static_cast<unsigned long>(v);
      advance();
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      fail(kind, at, "escape is not a Unicode scalar value");
    std::string out;
    append_utf8(out, cp);
    return out;
  }

  // Reads PN_PREFIX? ':' PN_LOCAL?, or a bare word when there is no colon.
  Name read_name() {
    Name name;
    while (is_name_char(peek()) || (peek() == '.' && !name.prefix.empty())) {
      name.prefix += peek();
      advance();
    }
    if (peek() != ':') {
      while (!name.prefix.empty() && name.prefix.back() == '.') {
        name.prefix.pop_back();
        retreat(1);
      }
      return name;
    }
    name.has_colon = true;
    advance();
    for (;;) {
      char c = peek();
      if (is_name_char(c) || is_digit(c) || c == ':' || (c == '.' && !name.local.empty())) {
        name.local += c;
        advance();
      } else if (c == '%') {
        Mark at = mark();
        name.local += c;
        advance();
        for (int i = 0; i < 2; ++i) {
          char h = peek();
          if (!(is_digit(h) || (h >= 'a' && h <= 'f') || (h >= 'A' && h <= 'F')))
            fail(ParseErrorKind::Lexical, at, "malformed percent escape");
          name.local += h;
          advance();
        }
      } else if (c == '\\') {
        Mark at = mark();
        advance();
        char e = peek();
        static constexpr std::string_view escapable = "_~.-!$&'()*+,;=/?#@%";
        if (at_end() || escapable.find(e) == std::string_view::npos)
          fail(ParseErrorKind::Lexical, at, "invalid local-name escape");
        name.local += e;
        advance();
      } else {
        break;
      }
    }
    while (!name.local.empty() && name.local.back() == '.') {
      name.local.pop_back();
      retreat(1);
    }
    return name;
  }

  Term resolve(const Name& name, const Mark& at) {
    auto it = prefixes_.find(name.prefix);
    if (it == prefixes_.end())
      fail(ParseErrorKind::UndefinedPrefix, at, "undefined prefix '" + name.prefix + ":'");
    std::string full = it->second + name.local;
    if (!has_scheme(full)) fail(ParseErrorKind::BadIri, at, "prefixed name is not absolute");
    return Term::iri(full);
  }

  Term string_literal() {
    Mark start = mark();
    char quote = peek();
    bool long_form = peek(1) == quote && peek(2) == quote;
    std::string value;
    if (long_form) {
      advance();
      advance();
      advance();
      for (;;) {
        if (at_end()) fail(ParseErrorKind::Lexical, start, "unterminated string");
        if (peek() == quote && peek(1) == quote && peek(2) == quote) {
          advance();
          advance();
          advance();
          break;
        }
        if (peek() == '\\') {
          value += read_escape();
          continue;
        }
        value += peek();
        advance();
      }
    } else {
      advance();
      for (;;) {
        if (at_end()) fail(ParseErrorKind::Lexical, start, "unterminated string");
        char c = peek();
        if (c == quote) {
          advance();
          break;
        }
        if (c == '\n' || c == '\r') fail(ParseErrorKind::Lexical, "line break inside string");
        if (c == '\\') {
          value += read_escape();
          continue;
        }
        value += c;
        advance();
      }
    }
    if (peek() == '@') {
      Mark at = mark();
      advance();
      std::string lang;
      while (is_alpha(peek())) {
        lang += peek();
        advance();
      }
      if (lang.empty()) fail(ParseErrorKind::BadLiteral, at, "empty language tag");
      while (peek() == '-') {
        lang += '-';
        advance();
        std::size_t before = lang.size();
        while (is_alpha(peek()) || is_digit(peek())) {
          lang += peek();
          advance();
        }
        if (lang.size() == before) fail(ParseErrorKind::BadLiteral, at, "malformed language tag");
      }
      return Term::literal(value, {}, lang);
    }
    if (peek() == '^' && peek(1) == '^') {
      advance();
      advance();
      Mark at = mark();
      Term dt = [&] {
        if (peek() == '<') return Term::iri(iri_ref());
        if (!is_name_start(peek()) && peek() != ':')
          fail(ParseErrorKind::BadLiteral, at, "expected datatype after '^^'");
        Name name = read_name();
        if (!name.has_colon) fail(ParseErrorKind::BadLiteral, at, "expected datatype IRI");
        return resolve(name, at);
      }();
      return Term::literal(value, dt.value());
    }
    return Term::string_literal(value);
  }

  std::string read_escape() {
    Mark at = mark();
    advance();  // '\'
    if (at_end()) fail(ParseErrorKind::BadLiteral, at, "dangling escape");
    char c = peek();
    switch (c) {
      case 't': advance(); return "\t";
      case 'b': advance(); return "\b";
      case 'n': advance(); return "\n";
      case 'r': advance(); return "\r";
      case 'f': advance(); return "\f";
      case '"': advance(); return "\"";
      case '\'': advance(); return "'";
      case '\\': advance(); return "\\";
      case 'u': advance(); return read_hex_escape(4, at, ParseErrorKind::BadLiteral);
      case 'U': advance(); return read_hex_escape(8, at, ParseErrorKind::BadLiteral);
      default: fail(ParseErrorKind::BadLiteral, at, std::string("invalid escape '\\") + c + "'");
    }
  }

  Term numeric_literal() {
    Mark start = mark();
    std::string lex;
    if (peek() == '+' || peek() == '-') {
      lex += peek();
      advance();
    }
    std::size_t int_digits = 0;
    while (is_digit(peek())) {
      lex += peek();
      advance();
      ++int_digits;
    }
    bool decimal = false;
    if (peek() == '.' && is_digit(peek(1))) {
      decimal = true;
      lex += '.';
      advance();
      while (is_digit(peek())) {
        lex += peek();
        advance();
      }
    }
    bool exponent = false;
    if ((peek() == 'e' || peek() == 'E') && (int_digits > 0 || decimal)) {
      Mark at = mark();
      exponent = true;
      lex += peek();
      advance();
      if (peek() == '+' || peek() == '-') {
        lex += peek();
        advance();
      }
      if (!is_digit(peek())) fail(ParseErrorKind::BadLiteral, at, "malformed exponent");
      while (is_digit(peek())) {
        lex += peek();
        advance();
      }
    }
    if (int_digits == 0 && !decimal) fail(ParseErrorKind::BadLiteral, start, "malformed number");
    if (exponent) return Term::literal(lex, vocab::xsd::double_);
    if (decimal) return Term::literal(lex, vocab::xsd::decimal);
    return Term::literal(lex, vocab::xsd::integer);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Graph graph_;
  std::map<std::string, std::string> prefixes_;
  std::map<std::string, Term> blanks_;
};

}  // namespace

Graph parse_turtle(std::string_view text) { return TurtleParser(text).run(); }

}  // namespace ontoform
