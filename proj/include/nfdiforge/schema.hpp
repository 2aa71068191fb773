#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "nfdiforge/graph.hpp"

namespace nfdiforge {

/// definedClass is equivalent to the intersection of the (>= 2, named)
/// operand classes. The only class-expression shape the toolkit accepts.
struct IntersectionAxiom {
  Iri definedClass;
  std::vector<Iri> operands;
};

/// Reflexive-transitive reachability over IRIs. Cycles collapse into
/// mutual-reachability equivalence sets.
class TransitiveClosure {
 public:
  TransitiveClosure() = default;

  static TransitiveClosure from_edges(const std::set<std::pair<Iri, Iri>>& edges);

  bool reachable(const Iri& from, const Iri& to) const;
  /// All nodes reachable upward, including `node` itself.
  std::vector<Iri> ancestors(const Iri& node) const;
  /// All nodes that reach `node`, including `node` itself.
  std::vector<Iri> descendants(const Iri& node) const;

 private:
  std::map<Iri, std::set<Iri>> up_;
  std::map<Iri, std::set<Iri>> down_;
};

/// Schema-level knowledge extracted from a graph: hierarchies, disjointness,
/// domain/range, intersection-equivalence axioms, and the BFO-rooted class
/// subsets the validator and rule engine key on.
struct Schema {
  std::set<Iri> classes;
  std::set<std::pair<Iri, Iri>> subClassOf;  // (subclass, superclass)
  std::set<Iri> properties;
  std::set<std::pair<Iri, Iri>> subPropertyOf;
  std::set<std::pair<Iri, Iri>> disjointPairs;  // stored with first < second
  std::map<Iri, Iri> domainOf;
  std::map<Iri, Iri> rangeOf;
  std::vector<IntersectionAxiom> intersectionAxioms;
  std::set<Iri> roleClasses;
  std::set<Iri> processClasses;
  std::set<Iri> continuantClasses;
  std::set<Iri> occurrentClasses;
};

/// Reads subclass/subproperty/disjoint/domain/range/equivalent-intersection
/// assertions from a frozen graph. Unknown vocabulary is ignored; a
/// malformed intersection axiom raises SchemaError naming the defined class.
Schema extract_schema(const Graph& g);

TransitiveClosure subclass_closure(const Schema& s);
TransitiveClosure subproperty_closure(const Schema& s);

/// Bidirectional intersection-axiom fixpoint: individuals typed (under
/// subclass closure) with every operand gain the defined class; individuals
/// typed with the defined class gain every operand. Returns only rdf:type
/// triples not already present, in canonical order.
std::vector<Triple> apply_intersection_axioms(const Graph& g, const Schema& s);

}  // namespace nfdiforge
