#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nfdiforge/graph.hpp"
#include "nfdiforge/schema.hpp"

namespace nfdiforge {

struct QueryVar {
  std::string name;  // without the leading '?'

  bool operator==(const QueryVar& other) const { return name == other.name; }
};

using PatternTerm = std::variant<QueryVar, Term>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

/// A SELECT query over one basic graph pattern. Star projections are
/// expanded at parse time to all pattern variables, sorted.
struct Query {
  PrefixMap prefixes;
  std::vector<std::string> selectVars;
  std::vector<TriplePattern> patterns;
};

class QueryError : public Error {
 public:
  QueryError(int line, int column, const std::string& message,
             std::optional<std::string> unsupportedFeature = std::nullopt);

  int line() const { return line_; }
  int column() const { return column_; }
  /// Set when the query used a recognized but unsupported SPARQL keyword.
  const std::optional<std::string>& unsupported_feature() const { return unsupportedFeature_; }

 private:
  int line_;
  int column_;
  std::optional<std::string> unsupportedFeature_;
};

/// Parses the SPARQL subset documented in docs/query-subset.md:
/// PREFIX declarations, SELECT (vars or *), WHERE { BGP } with ';' and ','
/// abbreviations and the 'a' keyword.
Query parse_query(const std::string& text);

enum class Entailment { none, rdfs };

/// Deduplicated solution table in canonical row order.
struct SolutionSet {
  std::vector<std::string> header;
  std::vector<std::vector<Term>> rows;

  std::vector<std::map<std::string, Term>> as_maps() const;
  bool operator==(const SolutionSet& other) const;
};

/// BGP join evaluation with set (DISTINCT) semantics. Under rdfs
/// entailment, an rdf:type pattern with a constant class also matches
/// instances of its subclasses, and a constant-predicate pattern also
/// matches triples whose predicate is a subproperty.
SolutionSet evaluate(const Query& q, const Graph& g, const Schema& s, Entailment entailment);

}  // namespace nfdiforge
