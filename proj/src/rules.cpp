#include "nfdiforge/rules.hpp"

#include <algorithm>
#include <set>

namespace nfdiforge {
namespace {

bool word_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

// Single-line cursor for the rule grammar.
class LineParser {
 public:
  LineParser(const std::string& text, int line, const PrefixMap& prefixes)
      : text_(text), line_(line), prefixes_(prefixes) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool try_consume(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool try_consume_arrow() {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return true;
    }
    return false;
  }
  void expect(char c, const std::string& what) {
    if (!try_consume(c)) fail("expected '" + std::string(1, c) + "' " + what);
  }
  [[noreturn]] void fail(const std::string& message) const { throw RuleError(line_, message); }

  std::string read_word() {
    skip_ws();
    std::string word;
    while (pos_ < text_.size() && (word_char(text_[pos_]) || text_[pos_] == '-')) {
      // '->' terminates the body; a '-' that starts the arrow is not a name char.
      if (text_[pos_] == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') break;
      word += text_[pos_++];
    }
    return word;
  }

  Iri read_iri_term(const std::string& what) {
    skip_ws();
    if (peek() == '<') {
      ++pos_;
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != '>') value += text_[pos_++];
      if (pos_ >= text_.size()) fail("unterminated IRI reference in " + what);
      ++pos_;
      try {
        return Iri(value);
      } catch (const StructuralError& e) {
        fail(e.what());
      }
    }
    std::string prefix = read_word();
    if (peek() != ':') fail("expected IRI or CURIE as " + what);
    ++pos_;
    std::string local;
    while (pos_ < text_.size() && (word_char(text_[pos_]) || text_[pos_] == '-' || text_[pos_] == '.')) {
      local += text_[pos_++];
    }
    try {
      return prefixes_.expand(prefix + ":" + local);
    } catch (const PrefixError& e) {
      fail(e.what());
    }
  }

  RuleArg read_arg() {
    skip_ws();
    if (peek() == '?') {
      ++pos_;
      std::string name = read_word();
      if (name.empty()) fail("empty variable name");
      return RuleVar{name};
    }
    if (peek() == '"') {
      ++pos_;
      std::string lexical;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
          char e = text_[pos_ + 1];
          lexical += e == 'n' ? '\n' : e == 't' ? '\t' : e;
          pos_ += 2;
          continue;
        }
        lexical += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail("unterminated string literal");
      ++pos_;
      if (peek() == '@') {
        ++pos_;
        std::string tag = read_word();
        try {
          return Term(Literal::tagged(lexical, tag));
        } catch (const StructuralError& e) {
          fail(e.what());
        }
      }
      return Term(Literal::plain(lexical));
    }
    return Term(read_iri_term("atom argument"));
  }

  // `Class(?x)` or `property(?s, ?o)` -- arity decides the atom kind.
  RuleAtom read_atom() {
    Iri functor = read_iri_term("atom predicate");
    expect('(', "to open atom arguments");
    RuleArg first = read_arg();
    if (try_consume(',')) {
      RuleArg second = read_arg();
      expect(')', "to close atom arguments");
      return PropertyAtom{functor, std::move(first), std::move(second)};
    }
    expect(')', "to close atom arguments");
    return ClassAtom{functor, std::move(first)};
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_;
  const PrefixMap& prefixes_;
};

// Strips a '#' comment, ignoring '#' inside <...> or "...".
std::string strip_comment(const std::string& line) {
  bool inIri = false, inString = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (inString) {
      if (c == '\\') ++i;
      else if (c == '"') inString = false;
    } else if (inIri) {
      if (c == '>') inIri = false;
    } else if (c == '"') {
      inString = true;
    } else if (c == '<') {
      inIri = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

bool blank_line(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

void collect_vars(const RuleArg& arg, std::set<std::string>& out) {
  if (std::holds_alternative<RuleVar>(arg)) out.insert(std::get<RuleVar>(arg).name);
}

void parse_prefix_line(const std::string& line, int lineNo, PrefixMap& prefixes) {
  // @prefix label: <iri> .
  std::size_t pos = std::string("@prefix").size();
  auto fail = [&](const std::string& m) -> void { throw RuleError(lineNo, m); };
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  std::string label;
  while (pos < line.size() && (word_char(line[pos]) || line[pos] == '-')) label += line[pos++];
  if (pos >= line.size() || line[pos] != ':') fail("expected prefix label ending in ':'");
  ++pos;
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  if (pos >= line.size() || line[pos] != '<') fail("expected namespace IRI reference");
  ++pos;
  std::string ns;
  while (pos < line.size() && line[pos] != '>') ns += line[pos++];
  if (pos >= line.size()) fail("unterminated namespace IRI reference");
  ++pos;
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  if (pos >= line.size() || line[pos] != '.') fail("expected '.' after @prefix directive");
  ++pos;
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
  if (pos != line.size()) fail("trailing content after @prefix directive");
  try {
    prefixes.bind(label, Iri(ns));
  } catch (const StructuralError& e) {
    fail(e.what());
  }
}

}  // namespace

std::vector<std::string> check_rule_safety(const Rule& rule) {
  std::set<std::string> bodyVars;
  for (const RuleAtom& atom : rule.body) {
    if (std::holds_alternative<ClassAtom>(atom)) {
      collect_vars(std::get<ClassAtom>(atom).instance, bodyVars);
    } else {
      const auto& p = std::get<PropertyAtom>(atom);
      collect_vars(p.subject, bodyVars);
      collect_vars(p.object, bodyVars);
    }
  }
  std::set<std::string> headVars;
  collect_vars(rule.head.subject, headVars);
  collect_vars(rule.head.object, headVars);
  std::vector<std::string> unbound;
  for (const std::string& v : headVars) {
    if (!bodyVars.count(v)) unbound.push_back(v);
  }
  return unbound;
}

std::vector<Rule> parse_rules(const std::string& text, const PrefixMap& ambient) {
  PrefixMap prefixes = ambient;
  std::vector<Rule> rules;
  std::set<std::string> seenIds;

  int lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string raw = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    start = end == std::string::npos ? text.size() + 1 : end + 1;
    ++lineNo;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string line = strip_comment(raw);
    if (blank_line(line)) continue;

    std::size_t firstNonWs = line.find_first_not_of(" \t");
    if (line.compare(firstNonWs, 7, "@prefix") == 0) {
      parse_prefix_line(line.substr(firstNonWs), lineNo, prefixes);
      continue;
    }

    LineParser p(line, lineNo, prefixes);
    std::string id = p.read_word();
    if (id.empty()) p.fail("expected rule id");
    p.expect(':', "after rule id");
    if (!seenIds.insert(id).second) p.fail("duplicate rule id '" + id + "'");

    std::vector<RuleAtom> body;
    while (true) {
      body.push_back(p.read_atom());
      if (p.try_consume('^')) continue;
      if (p.try_consume_arrow()) break;
      p.fail("expected '^' or '->' after body atom");
    }
    RuleAtom head = p.read_atom();
    if (!p.eof()) p.fail("trailing content after rule head");
    if (!std::holds_alternative<PropertyAtom>(head)) {
      p.fail("rule head must be a property atom");
    }
    Rule rule{std::move(id), std::move(body), std::get<PropertyAtom>(head)};

    std::vector<std::string> unsafeVars = check_rule_safety(rule);
    if (!unsafeVars.empty()) {
      std::string names;
      for (const std::string& v : unsafeVars) names += (names.empty() ? "?" : ", ?") + v;
      p.fail("unsafe rule '" + rule.id + "': head variable " + names + " does not occur in the body");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

}  // namespace nfdiforge
