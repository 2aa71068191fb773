#pragma once

#include <string>

#include "nfdiforge/graph.hpp"

namespace nfdiforge {

enum class Dialect { turtle, ntriples };

enum class ParseErrorKind {
  bad_token,
  unterminated_literal,
  unknown_prefix,
  bad_iri,
  bad_structure,
};

const char* to_string(ParseErrorKind kind);

/// Parse failure with a 1-based position inside the input text. The first
/// error aborts the parse; there is no recovery.
class ParseError : public Error {
 public:
  ParseError(int line, int column, ParseErrorKind kind, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }
  ParseErrorKind kind() const { return kind_; }

 private:
  int line_;
  int column_;
  ParseErrorKind kind_;
};

/// Parses a full Turtle or N-Triples document into a frozen graph whose
/// prefix map holds the @prefix directives. Relative IRI references are
/// resolved by prepending `base`.
///
/// Supported Turtle subset: @prefix, prefixed names, absolute IRI refs,
/// the `a` keyword, predicate (';') and object (',') lists, string literals
/// with language tags or datatypes, labelled blank nodes, and single-level
/// anonymous blank nodes in object position. Collections, nested or
/// subject-position '[...]', and numeric/boolean shorthand are rejected.
Graph parse(const std::string& text, const Iri& base, Dialect dialect);

/// Deterministic serialization: triples in canonical order, prefixes sorted
/// by label. Re-parsing yields an isomorphic graph.
std::string serialize(const Graph& graph, const PrefixMap& prefixes, Dialect dialect);

}  // namespace nfdiforge
