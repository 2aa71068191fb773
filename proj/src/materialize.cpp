#include <algorithm>
#include <functional>
#include <set>

#include "nfdiforge/rules.hpp"
#include "nfdiforge/vocab.hpp"

namespace nfdiforge {
namespace {

using Bindings = std::map<std::string, Term>;

std::optional<Term> resolve(const RuleArg& arg, const Bindings& bindings) {
  if (std::holds_alternative<Term>(arg)) return std::get<Term>(arg);
  auto it = bindings.find(std::get<RuleVar>(arg).name);
  if (it == bindings.end()) return std::nullopt;
  return it->second;
}

// Extends `bindings` so that `arg` equals `value`; false on clash.
bool unify(const RuleArg& arg, const Term& value, Bindings& bindings) {
  if (std::holds_alternative<Term>(arg)) {
    return compare_terms(std::get<Term>(arg), value) == 0;
  }
  const std::string& name = std::get<RuleVar>(arg).name;
  auto [it, inserted] = bindings.emplace(name, value);
  return inserted || compare_terms(it->second, value) == 0;
}

// Facts = frozen base graph plus the derived set so far.
struct Facts {
  const Graph& base;
  std::vector<Triple> derived;
  std::set<Triple> derivedSet;

  bool contains(const Triple& t) const { return base.contains(t) || derivedSet.count(t) > 0; }
};

class Engine {
 public:
  Engine(const Graph& g, const Schema& s, const std::vector<Rule>& rules)
      : facts_{g, {}, {}}, rules_(rules), classes_(subclass_closure(s)) {
    for (const Rule& rule : rules) {
      if (!check_rule_safety(rule).empty()) {
        throw StructuralError("unsafe rule '" + rule.id + "' passed to materialize");
      }
    }
  }

  std::vector<DerivedTriple> run_semi_naive() {
    // Round 0 is a full evaluation; later rounds re-join each body atom
    // against the previous round's delta only.
    std::vector<Triple> delta;
    for (const Rule& rule : rules_) {
      evaluate_rule(rule, nullptr, 0, delta);
    }
    while (!delta.empty()) {
      std::vector<Triple> next;
      for (const Rule& rule : rules_) {
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
          evaluate_rule(rule, &delta, i, next);
        }
      }
      delta = std::move(next);
    }
    return std::move(derivations_);
  }

  std::vector<DerivedTriple> run_naive() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Triple> fresh;
      for (const Rule& rule : rules_) {
        evaluate_rule(rule, nullptr, 0, fresh);
      }
      changed = !fresh.empty();
    }
    return std::move(derivations_);
  }

 private:
  Facts facts_;
  const std::vector<Rule>& rules_;
  TransitiveClosure classes_;
  std::vector<DerivedTriple> derivations_;

  static int bound_count(const RuleAtom& atom, const Bindings& bindings) {
    auto boundArg = [&](const RuleArg& a) {
      return std::holds_alternative<Term>(a) ||
             bindings.count(std::get<RuleVar>(a).name) > 0;
    };
    if (std::holds_alternative<ClassAtom>(atom)) {
      return 1 + (boundArg(std::get<ClassAtom>(atom).instance) ? 1 : 0);
    }
    const auto& p = std::get<PropertyAtom>(atom);
    return 1 + (boundArg(p.subject) ? 1 : 0) + (boundArg(p.object) ? 1 : 0);
  }

  // Joins the body most-selective-first by current binding count, ties by
  // textual order; `deltaIdx` (when given) is evaluated first and only
  // against the delta.
  void evaluate_rule(const Rule& rule, const std::vector<Triple>* delta, std::size_t deltaIdx,
                     std::vector<Triple>& out) {
    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
      if (delta == nullptr || i != deltaIdx) remaining.push_back(i);
    }
    Bindings bindings;
    if (delta != nullptr) {
      match_atom(rule.body[deltaIdx], bindings, delta, [&](const Bindings& b) {
        join(rule, remaining, b, out);
      });
    } else {
      join(rule, remaining, bindings, out);
    }
  }

  void join(const Rule& rule, std::vector<std::size_t> remaining, const Bindings& bindings,
            std::vector<Triple>& out) {
    if (remaining.empty()) {
      emit(rule, bindings, out);
      return;
    }
    std::size_t best = 0;
    int bestScore = -1;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      int score = bound_count(rule.body[remaining[k]], bindings);
      if (score > bestScore) {
        bestScore = score;
        best = k;
      }
    }
    std::size_t atomIdx = remaining[best];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    match_atom(rule.body[atomIdx], bindings, nullptr, [&](const Bindings& b) {
      join(rule, remaining, b, out);
    });
  }

  void match_atom(const RuleAtom& atom, const Bindings& bindings, const std::vector<Triple>* delta,
                  const std::function<void(const Bindings&)>& fn) {
    if (std::holds_alternative<ClassAtom>(atom)) {
      match_class_atom(std::get<ClassAtom>(atom), bindings, delta, fn);
    } else {
      match_property_atom(std::get<PropertyAtom>(atom), bindings, delta, fn);
    }
  }

  void match_class_atom(const ClassAtom& atom, const Bindings& bindings,
                        const std::vector<Triple>* delta,
                        const std::function<void(const Bindings&)>& fn) {
    std::vector<Iri> subclasses = classes_.descendants(atom.classIri);
    std::set<Iri> subclassSet(subclasses.begin(), subclasses.end());
    std::optional<Term> instance = resolve(atom.instance, bindings);

    // Distinct instances only: one individual typed with several matching
    // subclasses still yields a single binding.
    std::set<Term, decltype(&term_less)> hits(&term_less);
    auto consider = [&](const Triple& t) {
      if (!(t.predicate() == vocab::rdf_type()) || !is_iri(t.object())) return;
      if (!subclassSet.count(std::get<Iri>(t.object()))) return;
      if (instance && compare_terms(*instance, t.subject()) != 0) return;
      hits.insert(t.subject());
    };
    if (delta != nullptr) {
      for (const Triple& t : *delta) consider(t);
    } else {
      for (const Iri& cls : subclasses) {
        facts_.base.scan(instance, vocab::rdf_type(), Term(cls),
                         [&](const Triple& t) { consider(t); });
      }
      for (const Triple& t : facts_.derived) consider(t);
    }
    for (const Term& subject : hits) {
      Bindings extended = bindings;
      if (unify(atom.instance, subject, extended)) fn(extended);
    }
  }

  void match_property_atom(const PropertyAtom& atom, const Bindings& bindings,
                           const std::vector<Triple>* delta,
                           const std::function<void(const Bindings&)>& fn) {
    std::optional<Term> s = resolve(atom.subject, bindings);
    std::optional<Term> o = resolve(atom.object, bindings);
    // Matches are collected before recursing: the continuation may emit new
    // derived triples, and facts_.derived must not grow mid-iteration.
    std::vector<Triple> matches;
    auto consider = [&](const Triple& t) {
      if (!(t.predicate() == atom.property)) return;
      if (s && compare_terms(*s, t.subject()) != 0) return;
      if (o && compare_terms(*o, t.object()) != 0) return;
      matches.push_back(t);
    };
    if (delta != nullptr) {
      for (const Triple& t : *delta) consider(t);
    } else {
      facts_.base.scan(s, atom.property, o, [&](const Triple& t) { consider(t); });
      for (const Triple& t : facts_.derived) consider(t);
    }
    for (const Triple& t : matches) {
      Bindings extended = bindings;
      if (unify(atom.subject, t.subject(), extended) && unify(atom.object, t.object(), extended)) {
        fn(extended);
      }
    }
  }

  void emit(const Rule& rule, const Bindings& bindings, std::vector<Triple>& out) {
    Term subject = *resolve(rule.head.subject, bindings);  // bound by safety
    Term object = *resolve(rule.head.object, bindings);
    if (is_literal(subject)) return;  // not a well-formed RDF triple; skipped
    Triple triple(subject, rule.head.property, object);
    if (facts_.contains(triple)) return;
    facts_.derivedSet.insert(triple);
    facts_.derived.push_back(triple);
    out.push_back(triple);
    derivations_.push_back(DerivedTriple{triple, rule.id, bindings});
  }
};

}  // namespace

std::vector<DerivedTriple> materialize(const Graph& g, const Schema& s,
                                       const std::vector<Rule>& rules) {
  return Engine(g, s, rules).run_semi_naive();
}

std::vector<DerivedTriple> materialize_naive(const Graph& g, const Schema& s,
                                             const std::vector<Rule>& rules) {
  return Engine(g, s, rules).run_naive();
}

}  // namespace nfdiforge
