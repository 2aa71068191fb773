#include <algorithm>
#include <set>

#include "nfdiforge/query.hpp"
#include "nfdiforge/vocab.hpp"

namespace nfdiforge {

QueryError::QueryError(int line, int column, const std::string& message,
                       std::optional<std::string> unsupportedFeature)
    : Error("query error at line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": " + message),
      line_(line),
      column_(column),
      unsupportedFeature_(std::move(unsupportedFeature)) {}

namespace {

bool word_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

std::string upper(std::string s) {
  for (char& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

const std::set<std::string>& unsupported_keywords() {
  static const std::set<std::string> kw = {
      "OPTIONAL", "FILTER", "UNION",  "ORDER",    "LIMIT",  "OFFSET", "GROUP",
      "HAVING",   "BIND",   "VALUES", "MINUS",    "GRAPH",  "SERVICE", "ASK",
      "CONSTRUCT", "DESCRIBE", "EXISTS", "REDUCED"};
  return kw;
}

class QueryParser {
 public:
  explicit QueryParser(const std::string& text) : text_(text) {}

  Query run() {
    Query q;
    skip_layout();
    while (is_keyword("PREFIX")) {
      read_word();
      parse_prefix(q.prefixes);
      skip_layout();
    }
    expect_keyword("SELECT");
    bool star = false;
    std::vector<std::string> vars;
    skip_layout();
    if (is_keyword("DISTINCT")) read_word();  // set semantics are always on
    skip_layout();
    if (peek() == '*') {
      advance();
      star = true;
    } else {
      while (true) {
        skip_layout();
        if (peek() != '?') break;
        vars.push_back(parse_var().name);
      }
      if (vars.empty()) fail_here("expected '*' or at least one variable after SELECT");
    }
    expect_keyword("WHERE");
    skip_layout();
    if (peek() != '{') fail_here("expected '{' after WHERE");
    advance();
    parse_bgp(q);
    skip_layout();
    if (peek() != '}') fail_here("expected '}' to close the graph pattern");
    advance();
    skip_layout();
    if (!eof()) {
      Pos at = here();
      std::string word = read_word();
      if (!word.empty() && unsupported_keywords().count(upper(word))) {
        throw QueryError(at.line, at.column, "unsupported feature: " + upper(word), upper(word));
      }
      fail(at, "trailing content after the graph pattern");
    }
    if (q.patterns.empty()) fail_here("empty basic graph pattern");

    std::set<std::string> patternVars;
    for (const TriplePattern& p : q.patterns) {
      for (const PatternTerm* t : {&p.subject, &p.predicate, &p.object}) {
        if (std::holds_alternative<QueryVar>(*t)) {
          patternVars.insert(std::get<QueryVar>(*t).name);
        }
      }
    }
    if (star) {
      q.selectVars.assign(patternVars.begin(), patternVars.end());
    } else {
      std::set<std::string> seen;
      for (const std::string& v : vars) {
        if (!patternVars.count(v)) {
          fail_here("projected variable ?" + v + " does not occur in the graph pattern");
        }
        if (seen.insert(v).second) q.selectVars.push_back(v);
      }
    }
    return q;
  }

 private:
  struct Pos {
    int line;
    int column;
  };

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;

  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  Pos here() const { return {line_, column_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(Pos at, const std::string& message) {
    throw QueryError(at.line, at.column, message);
  }
  [[noreturn]] void fail_here(const std::string& message) { fail(here(), message); }

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

  std::string peek_word() const {
    std::size_t i = pos_;
    std::string word;
    while (i < text_.size() && word_char(text_[i])) word += text_[i++];
    return word;
  }

  bool is_keyword(const std::string& keyword) {
    skip_layout();
    return upper(peek_word()) == keyword;
  }

  std::string read_word() {
    skip_layout();
    std::string word;
    while (!eof() && word_char(peek())) {
      word += peek();
      advance();
    }
    return word;
  }

  void expect_keyword(const std::string& keyword) {
    skip_layout();
    Pos at = here();
    std::string word = read_word();
    if (upper(word) != keyword) {
      if (!word.empty() && unsupported_keywords().count(upper(word))) {
        throw QueryError(at.line, at.column, "unsupported feature: " + upper(word), upper(word));
      }
      fail(at, "expected " + keyword);
    }
  }

  void parse_prefix(PrefixMap& prefixes) {
    skip_layout();
    std::string label = read_word();
    if (peek() != ':') fail_here("expected prefix label ending in ':'");
    advance();
    skip_layout();
    if (peek() != '<') fail_here("expected namespace IRI reference");
    Iri ns = parse_iriref();
    prefixes.bind(label, ns);
  }

  Iri parse_iriref() {
    Pos start = here();
    advance();  // '<'
    std::string value;
    while (!eof() && peek() != '>' && peek() != '\n') {
      value += peek();
      advance();
    }
    if (eof() || peek() != '>') fail(start, "unterminated IRI reference");
    advance();
    try {
      return Iri(value);
    } catch (const StructuralError& e) {
      fail(start, e.what());
    }
  }

  QueryVar parse_var() {
    advance();  // '?'
    Pos at = here();
    std::string name = read_word();
    if (name.empty()) fail(at, "empty variable name");
    return QueryVar{name};
  }

  PatternTerm parse_term(const Query& q, bool allowLiteral, bool allowA,
                         const std::string& what) {
    skip_layout();
    Pos start = here();
    char c = peek();
    if (c == '?') return parse_var();
    if (c == '<') return Term(parse_iriref());
    if (c == '"') {
      if (!allowLiteral) fail(start, "literal not allowed as " + what);
      return Term(parse_literal(q));
    }
    if (c == '_') fail(start, "blank node labels are not supported in queries");
    if (c == ':') return Term(parse_pname(q, "", start));
    if (word_char(c)) {
      std::string word = read_word();
      if (peek() == ':') return Term(parse_pname(q, word, start));
      if (allowA && word == "a") return Term(vocab::rdf_type());
      if (unsupported_keywords().count(upper(word))) {
        throw QueryError(start.line, start.column, "unsupported feature: " + upper(word),
                         upper(word));
      }
      fail(start, "expected " + what);
    }
    fail(start, "expected " + what);
  }

  Iri parse_pname(const Query& q, const std::string& label, Pos start) {
    advance();  // ':'
    std::string local;
    while (!eof() && (word_char(peek()) || peek() == '-' || peek() == '.')) {
      local += peek();
      advance();
    }
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      pos_ -= 1;
      column_ -= 1;
    }
    try {
      return q.prefixes.expand(label + ":" + local);
    } catch (const PrefixError& e) {
      fail(start, e.what());
    }
  }

  Literal parse_literal(const Query& q) {
    Pos start = here();
    advance();  // '"'
    std::string lexical;
    while (true) {
      if (eof() || peek() == '\n') fail(start, "unterminated string literal");
      char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        char e = peek();
        switch (e) {
          case '"': lexical += '"'; break;
          case '\\': lexical += '\\'; break;
          case 'n': lexical += '\n'; break;
          case 't': lexical += '\t'; break;
          case 'r': lexical += '\r'; break;
          default: fail_here("invalid string escape");
        }
        advance();
        continue;
      }
      lexical += c;
      advance();
    }
    if (peek() == '@') {
      advance();
      std::string tag;
      while (!eof() && (word_char(peek()) || peek() == '-')) {
        tag += peek();
        advance();
      }
      try {
        return Literal::tagged(lexical, tag);
      } catch (const StructuralError& e) {
        fail(start, e.what());
      }
    }
    if (peek() == '^' && peek(1) == '^') {
      advance();
      advance();
      skip_layout();
      Pos dtPos = here();
      PatternTerm dt = parse_term(q, false, false, "datatype");
      if (!std::holds_alternative<Term>(dt) || !is_iri(std::get<Term>(dt))) {
        fail(dtPos, "expected IRI as datatype");
      }
      try {
        return Literal::typed(lexical, std::get<Iri>(std::get<Term>(dt)));
      } catch (const StructuralError& e) {
        fail(dtPos, e.what());
      }
    }
    return Literal::plain(lexical);
  }

  void parse_bgp(Query& q) {
    while (true) {
      skip_layout();
      if (peek() == '}' || eof()) return;
      PatternTerm subject = parse_term(q, false, false, "subject");
      while (true) {
        PatternTerm predicate = parse_term(q, false, true, "predicate");
        if (std::holds_alternative<Term>(predicate) &&
            !is_iri(std::get<Term>(predicate))) {
          fail_here("predicate must be an IRI or variable");
        }
        while (true) {
          PatternTerm object = parse_term(q, true, false, "object");
          q.patterns.push_back(TriplePattern{subject, predicate, object});
          skip_layout();
          if (peek() == ',') {
            advance();
            continue;
          }
          break;
        }
        skip_layout();
        if (peek() == ';') {
          advance();
          skip_layout();
          if (peek() == '.' || peek() == '}') break;  // trailing ';'
          continue;
        }
        break;
      }
      skip_layout();
      if (peek() == '.') {
        advance();
        continue;
      }
      if (peek() == '}') return;
      fail_here("expected '.', ';', ',' or '}' after triple pattern");
    }
  }
};

}  // namespace

Query parse_query(const std::string& text) { return QueryParser(text).run(); }

}  // namespace nfdiforge
