#include <algorithm>
#include <functional>
#include <set>

#include "nfdiforge/query.hpp"
#include "nfdiforge/vocab.hpp"

namespace nfdiforge {

std::vector<std::map<std::string, Term>> SolutionSet::as_maps() const {
  std::vector<std::map<std::string, Term>> maps;
  maps.reserve(rows.size());
  for (const auto& row : rows) {
    std::map<std::string, Term> m;
    for (std::size_t i = 0; i < header.size(); ++i) m.emplace(header[i], row[i]);
    maps.push_back(std::move(m));
  }
  return maps;
}

bool SolutionSet::operator==(const SolutionSet& other) const {
  if (header != other.header || rows.size() != other.rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (compare_terms(rows[i][j], other.rows[i][j]) != 0) return false;
    }
  }
  return true;
}

namespace {

using Bindings = std::map<std::string, Term>;

std::optional<Term> substituted(const PatternTerm& t, const Bindings& bindings) {
  if (std::holds_alternative<Term>(t)) return std::get<Term>(t);
  auto it = bindings.find(std::get<QueryVar>(t).name);
  if (it == bindings.end()) return std::nullopt;
  return it->second;
}

bool unify(const PatternTerm& t, const Term& value, Bindings& bindings) {
  if (std::holds_alternative<Term>(t)) {
    return compare_terms(std::get<Term>(t), value) == 0;
  }
  auto [it, inserted] = bindings.emplace(std::get<QueryVar>(t).name, value);
  return inserted || compare_terms(it->second, value) == 0;
}

struct RowLess {
  bool operator()(const std::vector<Term>& a, const std::vector<Term>& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (int c = compare_terms(a[i], b[i])) return c < 0;
    }
    return a.size() < b.size();
  }
};

class Evaluator {
 public:
  Evaluator(const Graph& g, const Schema& s, Entailment entailment)
      : graph_(g), entailment_(entailment) {
    if (entailment == Entailment::rdfs) {
      classes_ = subclass_closure(s);
      properties_ = subproperty_closure(s);
    }
  }

  SolutionSet run(const Query& q) {
    SolutionSet result;
    result.header = q.selectVars;
    std::set<std::vector<Term>, RowLess> rows;

    std::vector<std::size_t> remaining(q.patterns.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
    Bindings bindings;
    join(q, remaining, bindings, rows);

    result.rows.assign(rows.begin(), rows.end());
    return result;
  }

 private:
  const Graph& graph_;
  Entailment entailment_;
  TransitiveClosure classes_;
  TransitiveClosure properties_;

  // Cheap selectivity estimate for the planner; entailment expansion is
  // ignored on purpose (it never changes the result, only the join order).
  std::size_t estimate(const TriplePattern& p, const Bindings& bindings) const {
    std::optional<Term> s = substituted(p.subject, bindings);
    std::optional<Term> pr = substituted(p.predicate, bindings);
    std::optional<Term> o = substituted(p.object, bindings);
    std::optional<Iri> predicate;
    if (pr && is_iri(*pr)) predicate = std::get<Iri>(*pr);
    if (pr && !predicate) return 0;  // non-IRI predicate can never match
    return graph_.count_estimate(s, predicate, o);
  }

  void join(const Query& q, std::vector<std::size_t> remaining, const Bindings& bindings,
            std::set<std::vector<Term>, RowLess>& rows) {
    if (remaining.empty()) {
      std::vector<Term> row;
      row.reserve(q.selectVars.size());
      for (const std::string& v : q.selectVars) row.push_back(bindings.at(v));
      rows.insert(std::move(row));
      return;
    }
    std::size_t best = 0;
    std::size_t bestCost = SIZE_MAX;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      std::size_t cost = estimate(q.patterns[remaining[k]], bindings);
      if (cost < bestCost) {
        bestCost = cost;
        best = k;
      }
    }
    std::size_t idx = remaining[best];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    match_pattern(q.patterns[idx], bindings, [&](const Bindings& extended) {
      join(q, remaining, extended, rows);
    });
  }

  // Entailment applies to pattern constants only: a constant-class rdf:type
  // pattern matches subclass instances, a constant predicate matches its
  // subproperties. Variable positions bind asserted terms directly.
  void match_pattern(const TriplePattern& p, const Bindings& bindings,
                     const std::function<void(const Bindings&)>& fn) {
    std::optional<Term> s = substituted(p.subject, bindings);
    std::optional<Term> o = substituted(p.object, bindings);

    std::set<Triple> candidates;
    auto collect = [&](const Triple& t) { candidates.insert(t); };

    if (std::holds_alternative<Term>(p.predicate)) {
      const Term& predTerm = std::get<Term>(p.predicate);
      if (!is_iri(predTerm)) return;
      const Iri& predicate = std::get<Iri>(predTerm);
      bool constantClass = predicate == vocab::rdf_type() &&
                           std::holds_alternative<Term>(p.object) &&
                           is_iri(std::get<Term>(p.object));
      if (entailment_ == Entailment::rdfs) {
        if (constantClass) {
          for (const Iri& sub : classes_.descendants(std::get<Iri>(std::get<Term>(p.object)))) {
            graph_.scan(s, vocab::rdf_type(), Term(sub), collect);
          }
        }
        for (const Iri& subProperty : properties_.descendants(predicate)) {
          graph_.scan(s, subProperty, o, collect);
        }
      } else {
        graph_.scan(s, predicate, o, collect);
      }
      for (const Triple& t : candidates) {
        Bindings extended = bindings;
        bool ok = unify(p.subject, t.subject(), extended);
        if (ok && constantClass && entailment_ == Entailment::rdfs) {
          // Object stays the queried class, not the asserted subclass.
        } else if (ok) {
          ok = unify(p.object, t.object(), extended);
        }
        if (ok) fn(extended);
      }
      return;
    }

    // Variable predicate: direct matches only.
    std::optional<Iri> noPred;
    graph_.scan(s, noPred, o, collect);
    for (const Triple& t : candidates) {
      Bindings extended = bindings;
      if (unify(p.subject, t.subject(), extended) &&
          unify(p.predicate, Term(t.predicate()), extended) &&
          unify(p.object, t.object(), extended)) {
        fn(extended);
      }
    }
  }
};

}  // namespace

SolutionSet evaluate(const Query& q, const Graph& g, const Schema& s, Entailment entailment) {
  return Evaluator(g, s, entailment).run(q);
}

}  // namespace nfdiforge
