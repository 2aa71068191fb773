// Acceptance suite: every criterion prints one pass/fail line and fails the
// build when unmet.

#include <gtest/gtest.h>

#include <chrono>
#include <iostream>

#include "nfdiforge/cq.hpp"
#include "nfdiforge/modules.hpp"
#include "nfdiforge/query.hpp"
#include "nfdiforge/rules.hpp"
#include "nfdiforge/schema.hpp"
#include "nfdiforge/turtle.hpp"
#include "nfdiforge/validate.hpp"
#include "nfdiforge/vocab.hpp"
#include "test_support.hpp"

using namespace nfdiforge;
using namespace testsupport;

namespace {

void report(int criterion, const std::string& description, bool ok) {
  std::cout << (ok ? "[ACCEPTANCE PASS] " : "[ACCEPTANCE FAIL] ") << "criterion " << criterion
            << ": " << description << std::endl;
  EXPECT_TRUE(ok) << "criterion " << criterion << ": " << description;
}

Schema excerpt_schema() {
  static Schema s = extract_schema(load_graph("ontology/nfdicore-excerpt.ttl"));
  return s;
}

Schema full_schema() {
  static Schema s = [] {
    ModuleRegistry registry = ModuleRegistry::from_directory(fixture_path("ontology"));
    return extract_schema(resolve_modules(*registry.find("all"), registry));
  }();
  return s;
}

std::vector<Rule> shortcut_rules() {
  return parse_rules(read_file(repo_dir() / "rules" / "shortcuts.rules"), PrefixMap());
}

Graph with_materialization(const Graph& g, const Schema& s, const std::vector<Rule>& rules) {
  Graph merged;
  g.for_each([&](const Triple& t) { merged.insert(t); });
  for (const DerivedTriple& d : materialize(g, s, rules)) merged.insert(d.triple);
  merged.freeze();
  return merged;
}

std::set<std::string> row_keys(const SolutionSet& sol) {
  std::set<std::string> keys;
  for (const auto& row : sol.as_maps()) {
    std::string key;
    for (const auto& [var, term] : row) key += "?" + var + "=" + to_ntriples(term) + " ";
    keys.insert(key);
  }
  return keys;
}

}  // namespace

TEST(Acceptance, Criterion1ShortcutMaterialization) {
  Graph g = load_graph("data/publisher-pattern.ttl");
  auto start = std::chrono::steady_clock::now();
  std::vector<DerivedTriple> derived = materialize(g, excerpt_schema(), shortcut_rules());
  auto elapsed = std::chrono::steady_clock::now() - start;

  Triple expected(t_iri("https://example.org/nfdi/ds1"),
                  Iri("https://nfdi.fiz-karlsruhe.de/ontology/publisher"),
                  t_iri("https://example.org/nfdi/fiz"));
  bool ok = derived.size() == 1 && derived[0].triple == expected &&
            elapsed < std::chrono::seconds(1);
  report(1, "publisher-pattern fixture derives exactly (:ds1, nfdicore:publisher, :fiz) in < 1 s",
         ok);
}

TEST(Acceptance, Criterion2QueryEquivalence) {
  Query complex = parse_query(read_file(fixture_path("queries/contact-complex.rq")));
  Query shortcut = parse_query(read_file(fixture_path("queries/contact-shortcut.rq")));
  Schema s = excerpt_schema();
  std::vector<Rule> rules = shortcut_rules();

  struct Fixture {
    const char* file;
    std::size_t expectedRows;
  };
  const Fixture fixtures[] = {
      {"data/eq-contact-basic.ttl", 1},
      {"data/eq-contact-two-services.ttl", 2},
      {"data/eq-contact-two-contacts.ttl", 2},
      {"data/eq-contact-unrealized.ttl", 0},
  };
  bool ok = true;
  for (const Fixture& f : fixtures) {
    Graph asserted = load_graph(f.file);
    Graph materializedGraph = with_materialization(asserted, s, rules);
    SolutionSet complexSol = evaluate(complex, asserted, s, Entailment::rdfs);
    SolutionSet shortcutSol = evaluate(shortcut, materializedGraph, s, Entailment::rdfs);
    bool equal = row_keys(complexSol) == row_keys(shortcutSol);
    bool sized = complexSol.rows.size() == f.expectedRows;
    if (!(equal && sized)) {
      ADD_FAILURE() << f.file << ": equal=" << equal << " rows=" << complexSol.rows.size()
                    << " expected=" << f.expectedRows;
      ok = false;
    }
  }
  report(2,
         "complex query on asserted graph equals shortcut query on materialized graph on 4 "
         "fixtures (incl. shared-process and unrealized-role)",
         ok);
}

TEST(Acceptance, Criterion3CqSuite) {
  std::vector<CqCase> suite = load_suite(read_file(repo_dir() / "suites" / "suite-core.json"));
  Graph g = load_graph("data/cq-data.ttl");
  Schema s = full_schema();
  std::vector<Rule> rules = shortcut_rules();

  CqReport first = run_suite(suite, g, s, rules);
  CqReport second = run_suite(suite, g, s, rules);

  std::set<std::string> skippedIds, unanswerableIds;
  for (const CqCaseResult& r : first.cases) {
    if (r.outcome == CqOutcome::skipped_unanswerable) skippedIds.insert(r.id);
  }
  bool standardsForProcessSkipped = false;
  for (const CqCase& c : suite) {
    if (c.mode == CqMode::unanswerable) {
      unanswerableIds.insert(c.id);
      if (c.question.find("What standards are there for a specific process") !=
          std::string::npos) {
        standardsForProcessSkipped = skippedIds.count(c.id) > 0;
      }
    }
  }
  bool ok = first.failed() == 0 && first.passed() >= 12 && skippedIds == unanswerableIds &&
            standardsForProcessSkipped && first.to_json() == second.to_json();
  report(3,
         ">= 12 CQ cases pass, exactly the unanswerable cases (incl. standards-for-a-process) "
         "are skipped, report is deterministic",
         ok);
}

TEST(Acceptance, Criterion4ReasonerOracle) {
  Rng rng(0xBF0);
  Vocabulary v = small_vocabulary();
  std::size_t discrepancies = 0;
  for (int round = 0; round < 500; ++round) {
    Graph g = random_graph(rng, v, 100);
    Schema s = random_schema(rng, v);
    std::vector<Rule> rules;
    std::size_t ruleCount = 1 + rng.below(5);
    for (std::size_t i = 0; i < ruleCount; ++i) {
      rules.push_back(random_rule(rng, v, "r" + std::to_string(i), 4));
    }
    if (derived_set(materialize(g, s, rules)) != derived_set(materialize_naive(g, s, rules))) {
      ++discrepancies;
    }
  }
  report(4, "semi-naive equals naive materialization on 500 randomized instances", 
         discrepancies == 0);
}

TEST(Acceptance, Criterion5QueryOracle) {
  Rng rng(0x5417);
  Vocabulary v = small_vocabulary();
  std::size_t discrepancies = 0, monotonicityBreaks = 0;
  for (int round = 0; round < 500; ++round) {
    Graph g = random_graph(rng, v, 200);
    Schema s = random_schema(rng, v);

    Query q;
    std::vector<std::string> vars = {"v0", "v1", "v2", "v3", "v4", "v5"};
    std::size_t patternCount = 1 + rng.below(4);
    std::size_t introduced = 0;
    auto var = [&]() -> PatternTerm {
      if (introduced == 0 || (introduced < vars.size() && rng.chance(0.4))) ++introduced;
      return QueryVar{vars[rng.below(introduced)]};
    };
    for (std::size_t i = 0; i < patternCount; ++i) {
      PatternTerm subject = rng.chance(0.6) ? var() : PatternTerm(Term(rng.pick(v.subjects)));
      PatternTerm predicate;
      if (rng.chance(0.15)) predicate = var();
      else if (rng.chance(0.35)) predicate = Term(vocab::rdf_type());
      else predicate = Term(rng.pick(v.predicates));
      PatternTerm object;
      if (rng.chance(0.5)) object = var();
      else if (rng.chance(0.4)) object = Term(rng.pick(v.classes));
      else object = rng.pick(v.objects);
      q.patterns.push_back(TriplePattern{subject, predicate, object});
    }
    std::set<std::string> seen;
    for (const TriplePattern& p : q.patterns) {
      for (const PatternTerm* t : {&p.subject, &p.predicate, &p.object}) {
        if (std::holds_alternative<QueryVar>(*t)) seen.insert(std::get<QueryVar>(*t).name);
      }
    }
    if (seen.empty()) {
      q.patterns.push_back(TriplePattern{QueryVar{"v0"}, QueryVar{"v1"}, QueryVar{"v2"}});
      seen = {"v0", "v1", "v2"};
    }
    q.selectVars.assign(seen.begin(), seen.end());

    bool instanceOk = true;
    for (Entailment e : {Entailment::none, Entailment::rdfs}) {
      if (!(evaluate(q, g, s, e) == BruteForceEvaluator(g, s, e).run(q))) instanceOk = false;
    }
    if (!instanceOk) ++discrepancies;

    std::set<std::string> none = row_keys(evaluate(q, g, s, Entailment::none));
    std::set<std::string> rdfs = row_keys(evaluate(q, g, s, Entailment::rdfs));
    for (const std::string& key : none) {
      if (!rdfs.count(key)) {
        ++monotonicityBreaks;
        break;
      }
    }
  }
  report(5,
         "BGP evaluation equals the brute-force oracle on 500 randomized instances and "
         "entailment is monotone",
         discrepancies == 0 && monotonicityBreaks == 0);
}

TEST(Acceptance, Criterion6ValidatorSeeds) {
  struct Seed {
    const char* file;
    ViolationCode code;
  };
  const Seed seeds[] = {
      {"seeds/seed-role-bearer-not-ic.ttl", ViolationCode::ROLE_BEARER_NOT_IC},
      {"seeds/seed-role-bearer-untyped.ttl", ViolationCode::ROLE_BEARER_NOT_IC},
      {"seeds/seed-role-not-realized.ttl", ViolationCode::ROLE_NOT_REALIZED},
      {"seeds/seed-role-without-bearer.ttl", ViolationCode::ROLE_WITHOUT_BEARER},
      {"seeds/seed-overlap.ttl", ViolationCode::CONTINUANT_OCCURRENT_OVERLAP},
      {"seeds/seed-domain-violation.ttl", ViolationCode::DOMAIN_VIOLATION},
      {"seeds/seed-range-violation.ttl", ViolationCode::RANGE_VIOLATION},
      {"seeds/seed-process-as-resource.ttl", ViolationCode::PROCESS_AS_RESOURCE_NOTICE},
  };
  Schema s = excerpt_schema();
  bool ok = true;
  for (const Seed& seed : seeds) {
    ValidationReport report = validate(load_graph(seed.file), s);
    if (report.violations.size() != 1 || report.violations[0].code != seed.code) {
      ADD_FAILURE() << seed.file << " yielded " << report.violations.size() << " violation(s)";
      ok = false;
    }
  }
  for (const char* rel : {"data/publisher-pattern.ttl", "data/eq-contact-basic.ttl",
                          "data/eq-contact-two-services.ttl", "data/eq-contact-two-contacts.ttl",
                          "data/eq-contact-unrealized.ttl", "data/cto-performance.ttl",
                          "data/cq-data.ttl"}) {
    if (validate(load_graph(rel), s).error_count() != 0) {
      ADD_FAILURE() << rel << " is not clean";
      ok = false;
    }
  }
  report(6, "one-fault corpus yields exactly the intended violation per code; clean corpus has "
            "zero errors",
         ok);
}

TEST(Acceptance, Criterion7RoundTrip) {
  bool ok = true;
  std::size_t fixtureCount = 0;
  for (const char* dir : {"ontology", "data", "seeds", "badmodules"}) {
    for (const auto& entry : fs::directory_iterator(fixture_path(dir))) {
      auto extension = entry.path().extension();
      if (extension != ".ttl" && extension != ".nt") continue;
      ++fixtureCount;
      Dialect d = extension == ".nt" ? Dialect::ntriples : Dialect::turtle;
      Graph original = parse(read_file(entry.path()), Iri("urn:test:base#"), d);
      for (Dialect out : {Dialect::turtle, Dialect::ntriples}) {
        Graph back =
            parse(serialize(original, original.prefixes(), out), Iri("urn:test:base#"), out);
        if (!graph_isomorphic(original, back)) {
          ADD_FAILURE() << entry.path() << " failed round-trip";
          ok = false;
        }
      }
    }
  }

  Rng rng(0x707);
  Vocabulary v = small_vocabulary();
  PrefixMap pm;
  pm.bind("ex", Iri("http://example.org/"));
  for (int i = 0; i < 200; ++i) {
    Graph g = random_graph(rng, v, 120);
    Dialect out = rng.chance(0.5) ? Dialect::turtle : Dialect::ntriples;
    Graph back = parse(serialize(g, pm, out), Iri("urn:test:base#"), out);
    if (!graph_isomorphic(g, back)) {
      ADD_FAILURE() << "random graph " << i << " failed round-trip";
      ok = false;
    }
  }
  report(7, "parse-serialize-parse isomorphism on every bundled fixture (" +
                std::to_string(fixtureCount) + ") and 200 random graphs",
         ok);
}

TEST(Acceptance, Criterion8IntersectionAxioms) {
  Schema s = excerpt_schema();
  const Iri creativeWork("https://nfdi.fiz-karlsruhe.de/ontology/CreativeWork");

  Graph both = parse_turtle(
      "@prefix : <https://example.org/nfdi/> .\n"
      "@prefix iao: <http://purl.obolibrary.org/obo/iao/> .\n"
      "@prefix schema: <https://schema.org/> .\n"
      ":kg a iao:InformationContentEntity , schema:CreativeWork .\n");
  std::vector<Triple> gained = apply_intersection_axioms(both, s);
  bool gainsDefined =
      gained.size() == 1 &&
      gained[0] == Triple(t_iri("https://example.org/nfdi/kg"), vocab::rdf_type(),
                          Term(creativeWork));

  Graph materialOnly = parse_turtle(
      "@prefix : <https://example.org/nfdi/> .\n"
      "@prefix schema: <https://schema.org/> .\n"
      ":painting a schema:CreativeWork .\n");
  bool materialGainsNothing = apply_intersection_axioms(materialOnly, s).empty();

  Graph extended;
  both.for_each([&](const Triple& t) { extended.insert(t); });
  for (const Triple& t : gained) extended.insert(t);
  extended.freeze();
  bool fixpoint = apply_intersection_axioms(extended, s).empty();

  report(8,
         "{ICE, schema:CreativeWork} gains nfdicore:CreativeWork; schema:CreativeWork alone "
         "gains nothing; re-application adds zero triples",
         gainsDefined && materialGainsNothing && fixpoint);
}
