#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "nfdiforge/graph.hpp"
#include "nfdiforge/schema.hpp"

namespace nfdiforge {

struct RuleVar {
  std::string name;  // without the leading '?'

  bool operator==(const RuleVar& other) const { return name == other.name; }
  bool operator<(const RuleVar& other) const { return name < other.name; }
};

using RuleArg = std::variant<RuleVar, Term>;

/// ClassAtom(C, x): x is an instance of C; matches rdf:type triples under
/// subclass closure.
struct ClassAtom {
  Iri classIri;
  RuleArg instance;
};

/// PropertyAtom(p, s, o): an exact-predicate triple pattern.
struct PropertyAtom {
  Iri property;
  RuleArg subject;
  RuleArg object;
};

using RuleAtom = std::variant<ClassAtom, PropertyAtom>;

/// One shortcut rule: conjunctive body, single property-atom head, safe
/// (every head variable occurs in the body).
struct Rule {
  std::string id;
  std::vector<RuleAtom> body;
  PropertyAtom head;
};

class RuleError : public Error {
 public:
  RuleError(int line, const std::string& message)
      : Error("rule error at line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Head variables that do not occur in the body; empty means the rule is safe.
std::vector<std::string> check_rule_safety(const Rule& rule);

/// Parses the rule file format documented in docs/rules.md: an optional
/// Turtle-style @prefix header block, then one `id: Atom ^ ... -> Atom`
/// rule per line; '#' starts a comment. Rules are returned in file order
/// and each must pass the safety check.
std::vector<Rule> parse_rules(const std::string& text, const PrefixMap& ambient);

/// A materialized triple with its provenance: applying `bindings` to the
/// rule's head reproduces the triple.
struct DerivedTriple {
  Triple triple;
  std::string ruleId;
  std::map<std::string, Term> bindings;
};

/// Semi-naive forward chaining to fixpoint: each round re-joins only
/// against the previous round's delta. Derived triples are deduplicated
/// against the graph and among themselves.
std::vector<DerivedTriple> materialize(const Graph& g, const Schema& s,
                                       const std::vector<Rule>& rules);

/// Reference engine: full re-evaluation of every rule each round. Derives
/// the same triple set as materialize (order may differ).
std::vector<DerivedTriple> materialize_naive(const Graph& g, const Schema& s,
                                             const std::vector<Rule>& rules);

}  // namespace nfdiforge
