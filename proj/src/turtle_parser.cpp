#include <set>
#include <string>

#include "nfdiforge/turtle.hpp"
#include "nfdiforge/vocab.hpp"

namespace nfdiforge {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::bad_token: return "bad-token";
    case ParseErrorKind::unterminated_literal: return "unterminated-literal";
    case ParseErrorKind::unknown_prefix: return "unknown-prefix";
    case ParseErrorKind::bad_iri: return "bad-iri";
    case ParseErrorKind::bad_structure: return "bad-structure";
  }
  return "?";
}

ParseError::ParseError(int line, int column, ParseErrorKind kind, const std::string& message)
    : Error("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
            " [" + to_string(kind) + "]: " + message),
      line_(line),
      column_(column),
      kind_(kind) {}

namespace {

bool word_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

void append_codepoint(std::string& out, unsigned long cp, const std::function<void()>& fail) {
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail();
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

class Parser {
 public:
  Parser(const std::string& text, const Iri& base, Dialect dialect)
      : text_(text), base_(base), dialect_(dialect) {}

  Graph run() {
    skip_bom();
    skip_layout();
    while (!eof()) {
      if (dialect_ == Dialect::turtle) {
        parse_turtle_statement();
      } else {
        parse_ntriples_statement();
      }
      skip_layout();
    }
    graph_.freeze();
    return std::move(graph_);
  }

 private:
  struct Pos {
    int line;
    int column;
  };

  const std::string& text_;
  Iri base_;
  Dialect dialect_;
  Graph graph_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  int anonCounter_ = 0;
  std::set<std::string> explicitLabels_;
  std::set<std::string> generatedLabels_;

  [[noreturn]] void fail(Pos at, ParseErrorKind kind, const std::string& message) {
    throw ParseError(at.line, at.column, kind, message);
  }
  [[noreturn]] void fail_here(ParseErrorKind kind, const std::string& message) {
    fail(here(), kind, message);
  }

  Pos here() const { return {line_, column_}; }
  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  // Only safe when the retracted bytes contain no newline.
  void retract(std::size_t n) {
    pos_ -= n;
    column_ -= static_cast<int>(n);
  }

  void skip_bom() {
    if (text_.size() >= 3 && static_cast<unsigned char>(text_[0]) == 0xEF &&
        static_cast<unsigned char>(text_[1]) == 0xBB &&
        static_cast<unsigned char>(text_[2]) == 0xBF) {
      pos_ = 3;
    }
  }

  void skip_layout() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        return;
      }
    }
  }

  void expect(char c, const std::string& what) {
    if (eof() || peek() != c) {
      fail_here(ParseErrorKind::bad_token, "expected '" + std::string(1, c) + "' " + what);
    }
    advance();
  }

  std::string read_word() {
    std::string word;
    while (!eof() && word_char(peek())) {
      word += peek();
      advance();
    }
    return word;
  }

  // --- tokens -------------------------------------------------------------

  Iri parse_iriref() {
    Pos start = here();
    advance();  // '<'
    std::string value;
    while (true) {
      if (eof() || peek() == '\n') {
        fail(start, ParseErrorKind::bad_iri, "unterminated IRI reference");
      }
      char c = peek();
      if (c == '>') {
        advance();
        break;
      }
      if (c == ' ' || c == '\t') {
        fail(start, ParseErrorKind::bad_iri, "whitespace inside IRI reference");
      }
      if (c == '\\') {
        advance();
        char e = peek();
        int digits = e == 'u' ? 4 : e == 'U' ? 8 : 0;
        if (digits == 0) fail(start, ParseErrorKind::bad_iri, "invalid escape in IRI reference");
        advance();
        unsigned long cp = read_hex(digits, start, ParseErrorKind::bad_iri);
        append_codepoint(value, cp, [&]() {
          fail(start, ParseErrorKind::bad_iri, "invalid code point in IRI reference");
        });
        continue;
      }
      value += c;
      advance();
    }
    if (value.find(':') == std::string::npos) value = base_.value() + value;  // relative
    try {
      return Iri(value);
    } catch (const StructuralError& e) {
      fail(start, ParseErrorKind::bad_iri, e.what());
    }
  }

  unsigned long read_hex(int digits, Pos at, ParseErrorKind kind) {
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      char c = peek();
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else fail(at, kind, "expected hex digit in escape");
      cp = cp * 16 + static_cast<unsigned long>(v);
      advance();
    }
    return cp;
  }

  // Reads the local part of a prefixed name or blank node label; trailing
  // dots belong to the surrounding statement and are handed back.
  std::string read_local() {
    std::string local;
    while (!eof() && (word_char(peek()) || peek() == '-' || peek() == '.')) {
      local += peek();
      advance();
    }
    std::size_t drop = 0;
    while (drop < local.size() && local[local.size() - 1 - drop] == '.') ++drop;
    if (drop > 0) {
      retract(drop);
      local.resize(local.size() - drop);
    }
    return local;
  }

  // Caller guarantees the cursor sits on a prefixed name (word + ':' or ':').
  Iri parse_pname(const std::string& labelSoFar, Pos start) {
    advance();  // ':'
    std::string curie = labelSoFar + ":" + read_local();
    try {
      return graph_.prefixes().expand(curie);
    } catch (const PrefixError& e) {
      fail(start, ParseErrorKind::unknown_prefix, e.what());
    }
  }

  BlankNode parse_blank_label() {
    Pos start = here();
    advance();  // '_'
    expect(':', "after '_' in blank node label");
    std::string label = read_local();
    if (label.empty()) fail(start, ParseErrorKind::bad_token, "empty blank node label");
    if (generatedLabels_.count(label)) {
      fail(start, ParseErrorKind::bad_structure,
           "blank node label '" + label + "' collides with a generated label");
    }
    explicitLabels_.insert(label);
    return BlankNode(label);
  }

  BlankNode fresh_blank() {
    std::string label;
    do {
      label = "anon" + std::to_string(anonCounter_++);
    } while (explicitLabels_.count(label));
    generatedLabels_.insert(label);
    return BlankNode(label);
  }

  Literal parse_literal() {
    Pos start = here();
    advance();  // '"'
    if (peek() == '"' && peek(1) == '"') {
      fail(start, ParseErrorKind::bad_structure, "long string literals are not supported");
    }
    std::string lexical;
    while (true) {
      if (eof() || peek() == '\n') {
        fail(start, ParseErrorKind::unterminated_literal, "unterminated string literal");
      }
      char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        char e = peek();
        switch (e) {
          case '"': lexical += '"'; advance(); break;
          case '\\': lexical += '\\'; advance(); break;
          case 'n': lexical += '\n'; advance(); break;
          case 'r': lexical += '\r'; advance(); break;
          case 't': lexical += '\t'; advance(); break;
          case 'b': lexical += '\b'; advance(); break;
          case 'f': lexical += '\f'; advance(); break;
          case 'u':
          case 'U': {
            int digits = e == 'u' ? 4 : 8;
            advance();
            unsigned long cp = read_hex(digits, start, ParseErrorKind::bad_token);
            append_codepoint(lexical, cp, [&]() {
              fail(start, ParseErrorKind::bad_token, "invalid code point in string escape");
            });
            break;
          }
          default:
            fail_here(ParseErrorKind::bad_token, "invalid string escape");
        }
        continue;
      }
      lexical += c;
      advance();
    }
    if (peek() == '@') {
      advance();
      Pos tagPos = here();
      std::string tag;
      while (!eof() && (word_char(peek()) || peek() == '-')) {
        tag += peek();
        advance();
      }
      try {
        return Literal::tagged(lexical, tag);
      } catch (const StructuralError& e) {
        fail(tagPos, ParseErrorKind::bad_token, e.what());
      }
    }
    if (peek() == '^' && peek(1) == '^') {
      advance();
      advance();
      Pos dtPos = here();
      Iri datatype = parse_verb_or_iri(/*allowA=*/false, "datatype");
      try {
        return Literal::typed(lexical, datatype);
      } catch (const StructuralError& e) {
        fail(dtPos, ParseErrorKind::bad_token, e.what());
      }
    }
    return Literal::plain(lexical);
  }

  // IRI reference or (in Turtle) a prefixed name; `allowA` admits the 'a'
  // keyword and maps it to rdf:type.
  Iri parse_verb_or_iri(bool allowA, const std::string& what) {
    Pos start = here();
    if (peek() == '<') return parse_iriref();
    if (dialect_ == Dialect::ntriples) {
      fail(start, ParseErrorKind::bad_token, "expected IRI reference as " + what);
    }
    if (peek() == ':') return parse_pname("", start);
    if (word_char(peek())) {
      std::string word = read_word();
      if (peek() == ':') return parse_pname(word, start);
      if (allowA && word == "a") return vocab::rdf_type();
      fail(start, ParseErrorKind::bad_token, "expected IRI or prefixed name as " + what);
    }
    fail(start, ParseErrorKind::bad_token, "expected " + what);
  }

  // --- structure ----------------------------------------------------------

  void parse_prefix_directive(Pos start) {
    skip_layout();
    std::string label = read_word();
    if (eof() || peek() != ':') {
      fail(start, ParseErrorKind::bad_token, "expected prefix label ending in ':'");
    }
    advance();
    skip_layout();
    if (peek() != '<') fail_here(ParseErrorKind::bad_token, "expected namespace IRI reference");
    Iri ns = parse_iriref();
    skip_layout();
    expect('.', "after @prefix directive");
    graph_.prefixes().bind(label, ns);
  }

  void parse_turtle_statement() {
    Pos start = here();
    char c = peek();
    if (c == '@') {
      advance();
      std::string directive = read_word();
      if (directive == "prefix") {
        parse_prefix_directive(start);
        return;
      }
      if (directive == "base") {
        fail(start, ParseErrorKind::bad_structure, "@base directive is not supported");
      }
      fail(start, ParseErrorKind::bad_token, "unknown directive '@" + directive + "'");
    }
    Term subject = parse_subject();
    skip_layout();
    parse_predicate_object_list(subject, /*insideAnon=*/false);
    skip_layout();
    expect('.', "at end of statement");
  }

  Term parse_subject() {
    Pos start = here();
    char c = peek();
    if (c == '<') return Term(parse_iriref());
    if (c == '_') return Term(parse_blank_label());
    if (c == '[') {
      fail(start, ParseErrorKind::bad_structure,
           "anonymous blank node as subject is not supported");
    }
    if (c == '(') fail(start, ParseErrorKind::bad_structure, "collections are not supported");
    if (c == '"') fail(start, ParseErrorKind::bad_structure, "literal in subject position");
    if (c == ':') return Term(parse_pname("", start));
    if (word_char(c)) {
      if (c >= '0' && c <= '9') {
        fail(start, ParseErrorKind::bad_structure, "numeric literals are not supported");
      }
      std::string word = read_word();
      if (peek() == ':') return Term(parse_pname(word, start));
      fail(start, ParseErrorKind::bad_token, "expected subject");
    }
    fail(start, ParseErrorKind::bad_token, "expected subject");
  }

  void parse_predicate_object_list(const Term& subject, bool insideAnon) {
    while (true) {
      Iri predicate = parse_verb_or_iri(/*allowA=*/true, "predicate");
      skip_layout();
      while (true) {
        Term object = parse_object(insideAnon);
        graph_.insert(Triple(subject, predicate, object));
        skip_layout();
        if (peek() == ',') {
          advance();
          skip_layout();
          continue;
        }
        break;
      }
      if (peek() == ';') {
        advance();
        skip_layout();
        // Trailing ';' before '.' or ']' is allowed.
        if (peek() == '.' || peek() == ']') return;
        continue;
      }
      return;
    }
  }

  Term parse_object(bool insideAnon) {
    Pos start = here();
    char c = peek();
    if (c == '<') return Term(parse_iriref());
    if (c == '"') return Term(parse_literal());
    if (c == '_') return Term(parse_blank_label());
    if (c == '(') fail(start, ParseErrorKind::bad_structure, "collections are not supported");
    if (c == '[') {
      if (insideAnon) {
        fail(start, ParseErrorKind::bad_structure,
             "nested anonymous blank nodes are not supported");
      }
      advance();
      BlankNode node = fresh_blank();
      skip_layout();
      if (peek() != ']') {
        parse_predicate_object_list(Term(node), /*insideAnon=*/true);
        skip_layout();
      }
      expect(']', "to close anonymous blank node");
      return Term(node);
    }
    if ((c >= '0' && c <= '9') || c == '+' || c == '-') {
      fail(start, ParseErrorKind::bad_structure, "numeric literals are not supported");
    }
    if (c == '\'') {
      fail(start, ParseErrorKind::bad_structure, "single-quoted literals are not supported");
    }
    if (c == ':') return Term(parse_pname("", start));
    if (word_char(c)) {
      std::string word = read_word();
      if (peek() == ':') return Term(parse_pname(word, start));
      if (word == "true" || word == "false") {
        fail(start, ParseErrorKind::bad_structure, "boolean literals are not supported");
      }
      fail(start, ParseErrorKind::bad_token, "expected object");
    }
    fail(start, ParseErrorKind::bad_token, "expected object");
  }

  void parse_ntriples_statement() {
    Pos start = here();
    char c = peek();
    if (c == '@') {
      fail(start, ParseErrorKind::bad_structure, "directives are not allowed in N-Triples");
    }
    Term subject = [&]() -> Term {
      if (peek() == '<') return Term(parse_iriref());
      if (peek() == '_') return Term(parse_blank_label());
      if (peek() == '"') {
        fail(here(), ParseErrorKind::bad_structure, "literal in subject position");
      }
      fail_here(ParseErrorKind::bad_token, "expected IRI or blank node as subject");
    }();
    skip_layout();
    Iri predicate = parse_verb_or_iri(/*allowA=*/false, "predicate");
    skip_layout();
    Term object = [&]() -> Term {
      if (peek() == '<') return Term(parse_iriref());
      if (peek() == '_') return Term(parse_blank_label());
      if (peek() == '"') return Term(parse_literal());
      fail_here(ParseErrorKind::bad_token, "expected IRI, blank node, or literal as object");
    }();
    skip_layout();
    expect('.', "at end of triple");
    graph_.insert(Triple(subject, predicate, object));
  }
};

}  // namespace

Graph parse(const std::string& text, const Iri& base, Dialect dialect) {
  return Parser(text, base, dialect).run();
}

}  // namespace nfdiforge
