#include "nfdiforge/schema.hpp"

#include <algorithm>
#include <deque>

#include "nfdiforge/vocab.hpp"

namespace nfdiforge {

TransitiveClosure TransitiveClosure::from_edges(const std::set<std::pair<Iri, Iri>>& edges) {
  TransitiveClosure closure;
  std::map<Iri, std::set<Iri>> parents;
  std::set<Iri> nodes;
  for (const auto& [child, parent] : edges) {
    parents[child].insert(parent);
    nodes.insert(child);
    nodes.insert(parent);
  }
  for (const Iri& node : nodes) {
    std::set<Iri>& reach = closure.up_[node];
    std::deque<Iri> queue{node};
    reach.insert(node);
    while (!queue.empty()) {
      Iri current = queue.front();
      queue.pop_front();
      auto it = parents.find(current);
      if (it == parents.end()) continue;
      for (const Iri& parent : it->second) {
        if (reach.insert(parent).second) queue.push_back(parent);
      }
    }
  }
  for (const auto& [node, ups] : closure.up_) {
    for (const Iri& up : ups) closure.down_[up].insert(node);
  }
  return closure;
}

bool TransitiveClosure::reachable(const Iri& from, const Iri& to) const {
  if (from == to) return true;
  auto it = up_.find(from);
  return it != up_.end() && it->second.count(to) > 0;
}

std::vector<Iri> TransitiveClosure::ancestors(const Iri& node) const {
  auto it = up_.find(node);
  if (it == up_.end()) return {node};
  return {it->second.begin(), it->second.end()};
}

std::vector<Iri> TransitiveClosure::descendants(const Iri& node) const {
  auto it = down_.find(node);
  if (it == down_.end()) return {node};
  return {it->second.begin(), it->second.end()};
}

namespace {

std::optional<Iri> as_iri(const Term& t) {
  if (is_iri(t)) return std::get<Iri>(t);
  return std::nullopt;
}

// Walks an rdf:first/rdf:rest list of named classes.
std::vector<Iri> walk_operand_list(const Graph& g, const Term& head, const Iri& definedClass) {
  std::vector<Iri> operands;
  Term node = head;
  std::set<std::string> seen;  // guard against cyclic lists
  while (true) {
    if (is_iri(node) && std::get<Iri>(node) == vocab::rdf_nil()) break;
    if (!seen.insert(to_ntriples(node)).second) {
      throw SchemaError(definedClass.value(),
                        "cyclic operand list in intersection axiom for <" + definedClass.value() + ">");
    }
    auto firsts = g.match(node, vocab::rdf_first(), std::nullopt);
    auto rests = g.match(node, vocab::rdf_rest(), std::nullopt);
    if (firsts.size() != 1 || rests.size() != 1) {
      throw SchemaError(definedClass.value(),
                        "malformed operand list in intersection axiom for <" + definedClass.value() + ">");
    }
    auto operand = as_iri(firsts[0].object());
    if (!operand) {
      throw SchemaError(definedClass.value(),
                        "non-IRI operand in intersection axiom for <" + definedClass.value() + ">");
    }
    operands.push_back(*operand);
    node = rests[0].object();
  }
  return operands;
}

void extract_intersections(const Graph& g, Schema& s) {
  g.scan(std::nullopt, vocab::owl_equivalent_class(), std::nullopt, [&](const Triple& t) {
    const Term* definedTerm = nullptr;
    const Term* exprTerm = nullptr;
    if (is_iri(t.subject()) && is_blank(t.object())) {
      definedTerm = &t.subject();
      exprTerm = &t.object();
    } else if (is_blank(t.subject()) && is_iri(t.object())) {
      definedTerm = &t.object();
      exprTerm = &t.subject();
    } else {
      std::string focus = is_iri(t.subject()) ? std::get<Iri>(t.subject()).value()
                                              : to_ntriples(t.subject());
      throw SchemaError(focus, "unsupported owl:equivalentClass shape for " + focus +
                                   " (only intersections of named classes are accepted)");
    }
    Iri defined = std::get<Iri>(*definedTerm);
    auto lists = g.match(*exprTerm, vocab::owl_intersection_of(), std::nullopt);
    if (lists.size() != 1) {
      throw SchemaError(defined.value(), "equivalence for <" + defined.value() +
                                             "> is not an owl:intersectionOf expression");
    }
    std::vector<Iri> operands = walk_operand_list(g, lists[0].object(), defined);
    if (operands.size() < 2) {
      throw SchemaError(defined.value(), "intersection axiom for <" + defined.value() +
                                             "> has fewer than 2 operands");
    }
    for (const Iri& op : operands) {
      if (op == defined) {
        throw SchemaError(defined.value(),
                          "intersection axiom for <" + defined.value() + "> lists itself as operand");
      }
    }
    for (const auto& axiom : s.intersectionAxioms) {
      if (axiom.definedClass == defined && axiom.operands == operands) return;
    }
    s.classes.insert(defined);
    for (const Iri& op : operands) s.classes.insert(op);
    s.intersectionAxioms.push_back({defined, std::move(operands)});
  });
}

}  // namespace

Schema extract_schema(const Graph& g) {
  Schema s;

  g.scan(std::nullopt, vocab::rdfs_sub_class_of(), std::nullopt, [&](const Triple& t) {
    auto sub = as_iri(t.subject());
    auto super = as_iri(t.object());
    if (!sub || !super) return;  // class expressions are not modeled
    s.classes.insert(*sub);
    s.classes.insert(*super);
    s.subClassOf.emplace(*sub, *super);
  });

  g.scan(std::nullopt, vocab::rdfs_sub_property_of(), std::nullopt, [&](const Triple& t) {
    auto sub = as_iri(t.subject());
    auto super = as_iri(t.object());
    if (!sub || !super) return;
    s.properties.insert(*sub);
    s.properties.insert(*super);
    s.subPropertyOf.emplace(*sub, *super);
  });

  for (const Iri& classMarker : {vocab::owl_class(), vocab::rdfs_class()}) {
    g.scan(std::nullopt, vocab::rdf_type(), Term(classMarker), [&](const Triple& t) {
      if (auto c = as_iri(t.subject())) s.classes.insert(*c);
    });
  }
  for (const Iri& propertyMarker :
       {vocab::owl_object_property(), vocab::owl_datatype_property(), vocab::rdf_property()}) {
    g.scan(std::nullopt, vocab::rdf_type(), Term(propertyMarker), [&](const Triple& t) {
      if (auto p = as_iri(t.subject())) s.properties.insert(*p);
    });
  }

  g.scan(std::nullopt, vocab::owl_disjoint_with(), std::nullopt, [&](const Triple& t) {
    auto a = as_iri(t.subject());
    auto b = as_iri(t.object());
    if (!a || !b || *a == *b) return;
    s.classes.insert(*a);
    s.classes.insert(*b);
    s.disjointPairs.emplace(std::min(*a, *b), std::max(*a, *b));
  });

  // First declaration in canonical order wins for domain/range.
  g.scan(std::nullopt, vocab::rdfs_domain(), std::nullopt, [&](const Triple& t) {
    auto p = as_iri(t.subject());
    auto c = as_iri(t.object());
    if (!p || !c) return;
    s.properties.insert(*p);
    s.classes.insert(*c);
    s.domainOf.emplace(*p, *c);
  });
  g.scan(std::nullopt, vocab::rdfs_range(), std::nullopt, [&](const Triple& t) {
    auto p = as_iri(t.subject());
    auto c = as_iri(t.object());
    if (!p || !c) return;
    s.properties.insert(*p);
    s.classes.insert(*c);
    s.rangeOf.emplace(*p, *c);
  });

  extract_intersections(g, s);

  TransitiveClosure closure = subclass_closure(s);
  for (const Iri& c : s.classes) {
    if (closure.reachable(c, vocab::bfo_role())) s.roleClasses.insert(c);
    if (closure.reachable(c, vocab::bfo_process())) s.processClasses.insert(c);
    if (closure.reachable(c, vocab::bfo_continuant())) s.continuantClasses.insert(c);
    if (closure.reachable(c, vocab::bfo_occurrent())) s.occurrentClasses.insert(c);
  }
  return s;
}

TransitiveClosure subclass_closure(const Schema& s) {
  return TransitiveClosure::from_edges(s.subClassOf);
}

TransitiveClosure subproperty_closure(const Schema& s) {
  return TransitiveClosure::from_edges(s.subPropertyOf);
}

std::vector<Triple> apply_intersection_axioms(const Graph& g, const Schema& s) {
  TransitiveClosure closure = subclass_closure(s);

  // Exact type triples per individual; matching applies the closure on top.
  struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return term_less(a, b); }
  };
  std::map<Term, std::set<Iri>, TermLess> types;
  g.scan(std::nullopt, vocab::rdf_type(), std::nullopt, [&](const Triple& t) {
    if (auto c = as_iri(t.object())) types[t.subject()].insert(*c);
  });

  auto entails = [&](const std::set<Iri>& exact, const Iri& wanted) {
    for (const Iri& t : exact) {
      if (closure.reachable(t, wanted)) return true;
    }
    return false;
  };

  std::vector<Triple> added;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [individual, exact] : types) {
      for (const IntersectionAxiom& axiom : s.intersectionAxioms) {
        bool allOperands = true;
        for (const Iri& op : axiom.operands) {
          if (!entails(exact, op)) {
            allOperands = false;
            break;
          }
        }
        if (allOperands && !exact.count(axiom.definedClass)) {
          exact.insert(axiom.definedClass);
          added.emplace_back(individual, vocab::rdf_type(), Term(axiom.definedClass));
          changed = true;
        }
        if (entails(exact, axiom.definedClass)) {
          for (const Iri& op : axiom.operands) {
            if (!exact.count(op)) {
              exact.insert(op);
              added.emplace_back(individual, vocab::rdf_type(), Term(op));
              changed = true;
            }
          }
        }
      }
    }
  }
  std::sort(added.begin(), added.end());
  return added;
}

}  // namespace nfdiforge
