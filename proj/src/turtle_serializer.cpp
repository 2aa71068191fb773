#include <sstream>
#include <vector>

#include "nfdiforge/turtle.hpp"
#include "nfdiforge/vocab.hpp"

namespace nfdiforge {
namespace {

std::string render_iri(const Iri& iri, const PrefixMap& pm) {
  if (auto curie = pm.compact(iri)) return *curie;
  return to_ntriples(iri);
}

std::string render_term(const Term& term, const PrefixMap& pm) {
  if (is_iri(term)) return render_iri(std::get<Iri>(term), pm);
  if (is_blank(term)) return to_ntriples(term);
  const Literal& lit = std::get<Literal>(term);
  std::string out = "\"" + escape_literal(lit.lexical()) + "\"";
  if (lit.language()) {
    out += "@" + *lit.language();
  } else if (lit.datatype() != vocab::xsd_string()) {
    out += "^^" + render_iri(lit.datatype(), pm);
  }
  return out;
}

std::string serialize_ntriples(const std::vector<Triple>& triples) {
  std::ostringstream out;
  for (const Triple& t : triples) {
    out << to_ntriples(t.subject()) << " " << to_ntriples(Term(t.predicate())) << " "
        << to_ntriples(t.object()) << " .\n";
  }
  return out.str();
}

std::string serialize_turtle(const std::vector<Triple>& triples, const PrefixMap& pm) {
  std::ostringstream out;
  for (const auto& [label, ns] : pm.entries()) {
    out << "@prefix " << label << ": <" << ns.value() << "> .\n";
  }
  if (!pm.entries().empty() && !triples.empty()) out << "\n";

  // Triples arrive in canonical order; consecutive runs share subject and
  // predicate groups.
  for (std::size_t i = 0; i < triples.size();) {
    const Term& subject = triples[i].subject();
    out << render_term(subject, pm);
    bool firstPredicate = true;
    while (i < triples.size() && compare_terms(triples[i].subject(), subject) == 0) {
      const Iri& predicate = triples[i].predicate();
      out << (firstPredicate ? " " : " ;\n    ");
      firstPredicate = false;
      out << (predicate == vocab::rdf_type() ? "a" : render_iri(predicate, pm));
      bool firstObject = true;
      while (i < triples.size() && compare_terms(triples[i].subject(), subject) == 0 &&
             triples[i].predicate() == predicate) {
        out << (firstObject ? " " : " , ") << render_term(triples[i].object(), pm);
        firstObject = false;
        ++i;
      }
    }
    out << " .\n";
  }
  return out.str();
}

}  // namespace

std::string serialize(const Graph& graph, const PrefixMap& prefixes, Dialect dialect) {
  std::vector<Triple> triples;
  triples.reserve(graph.size());
  graph.for_each([&](const Triple& t) { triples.push_back(t); });
  if (dialect == Dialect::ntriples) return serialize_ntriples(triples);
  return serialize_turtle(triples, prefixes);
}

}  // namespace nfdiforge
