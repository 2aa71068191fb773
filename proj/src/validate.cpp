#include "nfdiforge/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nfdiforge/vocab.hpp"

namespace nfdiforge {

const char* to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::ROLE_BEARER_NOT_IC: return "ROLE_BEARER_NOT_IC";
    case ViolationCode::ROLE_NOT_REALIZED: return "ROLE_NOT_REALIZED";
    case ViolationCode::ROLE_WITHOUT_BEARER: return "ROLE_WITHOUT_BEARER";
    case ViolationCode::CONTINUANT_OCCURRENT_OVERLAP: return "CONTINUANT_OCCURRENT_OVERLAP";
    case ViolationCode::DOMAIN_VIOLATION: return "DOMAIN_VIOLATION";
    case ViolationCode::RANGE_VIOLATION: return "RANGE_VIOLATION";
    case ViolationCode::PROCESS_AS_RESOURCE_NOTICE: return "PROCESS_AS_RESOURCE_NOTICE";
  }
  return "?";
}

const char* to_string(Severity severity) {
  switch (severity) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::notice: return "notice";
  }
  return "?";
}

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(),
      [](const Violation& v) { return v.severity == Severity::error; }));
}
std::size_t ValidationReport::warning_count() const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(),
      [](const Violation& v) { return v.severity == Severity::warning; }));
}
std::size_t ValidationReport::notice_count() const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(),
      [](const Violation& v) { return v.severity == Severity::notice; }));
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["graphSize"] = graphSize;
  doc["counts"] = {{"error", error_count()}, {"warning", warning_count()}, {"notice", notice_count()}};
  doc["violations"] = nlohmann::ordered_json::array();
  for (const Violation& v : violations) {
    doc["violations"].push_back({{"code", to_string(v.code)},
                                 {"severity", to_string(v.severity)},
                                 {"focus", to_ntriples(v.focus)},
                                 {"detail", v.detail}});
  }
  return doc.dump(2) + "\n";
}

std::string ValidationReport::to_table() const {
  std::ostringstream out;
  out << "validated " << graphSize << " triples: " << error_count() << " error(s), "
      << warning_count() << " warning(s), " << notice_count() << " notice(s)\n";
  for (const Violation& v : violations) {
    out << "  [" << to_string(v.severity) << "] " << to_string(v.code) << " "
        << to_ntriples(v.focus) << ": " << v.detail << "\n";
  }
  return out.str();
}

namespace {

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return term_less(a, b); }
};

class Checker {
 public:
  Checker(const Graph& g, const Schema& s)
      : graph_(g), schema_(s), closure_(subclass_closure(s)) {
    graph_.scan(std::nullopt, vocab::rdf_type(), std::nullopt, [&](const Triple& t) {
      if (is_iri(t.object())) types_[t.subject()].insert(std::get<Iri>(t.object()));
    });
  }

  ValidationReport run() {
    check_role_bearers();
    check_role_realization();
    check_roles_without_bearer();
    check_category_overlap();
    check_domain_range();

    ValidationReport report;
    report.graphSize = graph_.size();
    report.violations.assign(found_.begin(), found_.end());
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) {
                if (a.code != b.code) return a.code < b.code;
                if (int c = compare_terms(a.focus, b.focus)) return c < 0;
                return a.detail < b.detail;
              });
    return report;
  }

 private:
  const Graph& graph_;
  const Schema& schema_;
  TransitiveClosure closure_;
  std::map<Term, std::set<Iri>, TermLess> types_;

  struct ViolationLess {
    bool operator()(const Violation& a, const Violation& b) const {
      if (a.code != b.code) return a.code < b.code;
      if (int c = compare_terms(a.focus, b.focus)) return c < 0;
      return a.detail < b.detail;
    }
  };
  std::set<Violation, ViolationLess> found_;

  bool has_types(const Term& node) const {
    auto it = types_.find(node);
    return it != types_.end() && !it->second.empty();
  }

  bool typed_under(const Term& node, const Iri& root) const {
    auto it = types_.find(node);
    if (it == types_.end()) return false;
    for (const Iri& t : it->second) {
      if (closure_.reachable(t, root)) return true;
    }
    return false;
  }

  void report(ViolationCode code, Severity severity, const Term& focus, std::string detail) {
    found_.insert(Violation{code, severity, focus, std::move(detail)});
  }

  // Roles can only be borne by independent continuants. A bearer without
  // any type assertion is a warning, not an error (open world).
  void check_role_bearers() {
    graph_.scan(std::nullopt, vocab::has_role(), std::nullopt, [&](const Triple& t) {
      if (!typed_under(t.object(), vocab::bfo_role())) return;
      if (!has_types(t.subject())) {
        report(ViolationCode::ROLE_BEARER_NOT_IC, Severity::warning, t.subject(),
               "bearer of role " + to_ntriples(t.object()) + " has no type assertions");
        return;
      }
      if (!typed_under(t.subject(), vocab::bfo_independent_continuant())) {
        report(ViolationCode::ROLE_BEARER_NOT_IC, Severity::error, t.subject(),
               "bearer of role " + to_ntriples(t.object()) +
                   " is not typed as an independent continuant");
      }
    });
  }

  void check_role_realization() {
    graph_.scan(std::nullopt, vocab::realized_in(), std::nullopt, [&](const Triple& t) {
      if (!typed_under(t.subject(), vocab::bfo_role())) return;
      const Term& target = t.object();
      if (is_literal(target)) {
        report(ViolationCode::ROLE_NOT_REALIZED, Severity::error, t.subject(),
               "role realized in a literal " + to_ntriples(target));
        return;
      }
      if (!has_types(target)) {
        report(ViolationCode::ROLE_NOT_REALIZED, Severity::warning, t.subject(),
               "role realized in " + to_ntriples(target) + " which has no type assertions");
        return;
      }
      if (!typed_under(target, vocab::bfo_process()) &&
          !typed_under(target, vocab::bfo_occurrent())) {
        report(ViolationCode::ROLE_NOT_REALIZED, Severity::error, t.subject(),
               "role realized in " + to_ntriples(target) +
                   " which is not typed as a process or occurrent");
      }
    });
  }

  void check_roles_without_bearer() {
    std::set<Term, TermLess> borne;
    graph_.scan(std::nullopt, vocab::has_role(), std::nullopt,
                [&](const Triple& t) { borne.insert(t.object()); });
    for (const auto& [node, nodeTypes] : types_) {
      (void)nodeTypes;
      if (!typed_under(node, vocab::bfo_role())) continue;
      if (!borne.count(node)) {
        report(ViolationCode::ROLE_WITHOUT_BEARER, Severity::warning, node,
               "role individual is never referenced by a has-role assertion");
      }
    }
  }

  // An individual typed under both BFO roots is an error, except for the
  // process-as-resource pattern, which stays an informational notice
  // because the modeling question is explicitly unresolved.
  void check_category_overlap() {
    for (const auto& [node, nodeTypes] : types_) {
      (void)nodeTypes;
      bool processAndResource = typed_under(node, vocab::bfo_process()) &&
                                typed_under(node, vocab::nfdicore_resource());
      if (processAndResource) {
        report(ViolationCode::PROCESS_AS_RESOURCE_NOTICE, Severity::notice, node,
               "individual is typed both as a process and as a resource");
        continue;
      }
      if (typed_under(node, vocab::bfo_continuant()) &&
          typed_under(node, vocab::bfo_occurrent())) {
        report(ViolationCode::CONTINUANT_OCCURRENT_OVERLAP, Severity::error, node,
               "individual is typed under both the continuant and occurrent subtrees");
      }
    }
  }

  // Domain/range checks fire only for nodes that carry type assertions;
  // untyped nodes are left alone (open world).
  void check_domain_range() {
    graph_.for_each([&](const Triple& t) {
      auto domainIt = schema_.domainOf.find(t.predicate());
      if (domainIt != schema_.domainOf.end() && has_types(t.subject()) &&
          !typed_under(t.subject(), domainIt->second)) {
        report(ViolationCode::DOMAIN_VIOLATION, Severity::error, t.subject(),
               "subject of " + to_ntriples(Term(t.predicate())) + " is not typed under domain " +
                   to_ntriples(Term(domainIt->second)));
      }
      auto rangeIt = schema_.rangeOf.find(t.predicate());
      if (rangeIt != schema_.rangeOf.end() && !is_literal(t.object()) && has_types(t.object()) &&
          !typed_under(t.object(), rangeIt->second)) {
        report(ViolationCode::RANGE_VIOLATION, Severity::error, t.object(),
               "object of " + to_ntriples(Term(t.predicate())) + " is not typed under range " +
                   to_ntriples(Term(rangeIt->second)));
      }
    });
  }
};

}  // namespace

ValidationReport validate(const Graph& g, const Schema& s) { return Checker(g, s).run(); }

}  // namespace nfdiforge
