#include <gtest/gtest.h>

#include "nfdiforge/rules.hpp"
#include "nfdiforge/turtle.hpp"
#include "nfdiforge/vocab.hpp"
#include "test_support.hpp"

using namespace nfdiforge;
using namespace testsupport;

namespace {

std::vector<Rule> shortcut_rules() {
  return parse_rules(read_file(repo_dir() / "rules" / "shortcuts.rules"), PrefixMap());
}

Schema excerpt_schema() {
  static Schema s = extract_schema(load_graph("ontology/nfdicore-excerpt.ttl"));
  return s;
}

PrefixMap example_prefixes() {
  PrefixMap pm;
  pm.bind("", Iri("http://example.org/"));
  return pm;
}

}  // namespace

TEST(ParseRules, PublisherRuleTransliteration) {
  std::vector<Rule> rules = shortcut_rules();
  ASSERT_GE(rules.size(), 1u);
  const Rule& publisher = rules[0];
  EXPECT_EQ(publisher.id, "publisher");
  EXPECT_EQ(publisher.body.size(), 8u);

  // Head: publisher(?r, ?a).
  EXPECT_EQ(publisher.head.property,
            Iri("https://nfdi.fiz-karlsruhe.de/ontology/publisher"));
  ASSERT_TRUE(std::holds_alternative<RuleVar>(publisher.head.subject));
  ASSERT_TRUE(std::holds_alternative<RuleVar>(publisher.head.object));
  EXPECT_EQ(std::get<RuleVar>(publisher.head.subject).name, "r");
  EXPECT_EQ(std::get<RuleVar>(publisher.head.object).name, "a");

  std::size_t classAtoms = 0, propertyAtoms = 0;
  for (const RuleAtom& atom : publisher.body) {
    std::holds_alternative<ClassAtom>(atom) ? ++classAtoms : ++propertyAtoms;
  }
  EXPECT_EQ(classAtoms, 4u);
  EXPECT_EQ(propertyAtoms, 4u);
}

TEST(ParseRules, UnsafeHeadVariableIsRejected) {
  try {
    parse_rules("@prefix : <http://example.org/> .\nr1: :A(?x) -> :p(?x, ?y)\n", PrefixMap());
    FAIL() << "expected RuleError";
  } catch (const RuleError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("?y"), std::string::npos);
  }
}

TEST(ParseRules, EmptyAndCommentOnlyFiles) {
  EXPECT_TRUE(parse_rules("", PrefixMap()).empty());
  EXPECT_TRUE(parse_rules("# nothing here\n\n   \n# more\n", PrefixMap()).empty());
}

TEST(ParseRules, ErrorsCarryLineNumbers) {
  try {
    parse_rules("# comment\n@prefix : <http://example.org/> .\nbad rule here\n", PrefixMap());
    FAIL() << "expected RuleError";
  } catch (const RuleError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_rules("r1: zzz:A(?x) -> zzz:p(?x, ?x)\n", PrefixMap()), RuleError);
  // Class atom as head.
  EXPECT_THROW(
      parse_rules("@prefix : <http://example.org/> .\nr1: :p(?x, ?y) -> :A(?x)\n", PrefixMap()),
      RuleError);
  // Duplicate ids.
  EXPECT_THROW(parse_rules("@prefix : <http://example.org/> .\n"
                           "r1: :A(?x) -> :p(?x, ?x)\n"
                           "r1: :B(?x) -> :q(?x, ?x)\n",
                           PrefixMap()),
               RuleError);
}

TEST(CheckRuleSafety, Cases) {
  std::vector<Rule> rules = shortcut_rules();
  for (const Rule& r : rules) EXPECT_TRUE(check_rule_safety(r).empty()) << r.id;

  // Head constant with non-empty body is fine.
  Rule constant{"c",
                {ClassAtom{ex("A"), RuleVar{"x"}}},
                PropertyAtom{ex("p"), Term(ex("s")), Term(ex("o"))}};
  EXPECT_TRUE(check_rule_safety(constant).empty());

  Rule unsafe{"u",
              {ClassAtom{ex("A"), RuleVar{"x"}}},
              PropertyAtom{ex("p"), RuleVar{"x"}, RuleVar{"missing"}}};
  std::vector<std::string> violations = check_rule_safety(unsafe);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0], "missing");
}

TEST(Materialize, PublisherFixtureDerivesExactlyOneTriple) {
  Graph g = load_graph("data/publisher-pattern.ttl");
  std::vector<DerivedTriple> derived = materialize(g, excerpt_schema(), shortcut_rules());
  ASSERT_EQ(derived.size(), 1u);
  EXPECT_TRUE(derived[0].triple ==
              Triple(t_iri("https://example.org/nfdi/ds1"),
                     Iri("https://nfdi.fiz-karlsruhe.de/ontology/publisher"),
                     t_iri("https://example.org/nfdi/fiz")));
  EXPECT_EQ(derived[0].ruleId, "publisher");
  // Bindings cover all body variables.
  EXPECT_EQ(derived[0].bindings.size(), 4u);
}

TEST(Materialize, EmptyGraphDerivesNothing) {
  Graph g;
  g.freeze();
  EXPECT_TRUE(materialize(g, excerpt_schema(), shortcut_rules()).empty());
  EXPECT_TRUE(materialize_naive(g, excerpt_schema(), shortcut_rules()).empty());
}

TEST(Materialize, ChainedRulesNeedTwoRounds) {
  std::vector<Rule> rules = parse_rules(
      "@prefix : <http://example.org/> .\n"
      "r1: :p(?x, ?y) -> :q(?x, ?y)\n"
      "r2: :q(?x, ?y) -> :r(?x, ?y)\n",
      PrefixMap());
  Graph g = freeze({Triple(Term(ex("a")), ex("p"), Term(ex("b")))});
  std::vector<DerivedTriple> derived = materialize(g, Schema{}, rules);
  ASSERT_EQ(derived.size(), 2u);
  EXPECT_TRUE(derived[0].triple == Triple(Term(ex("a")), ex("q"), Term(ex("b"))));
  EXPECT_TRUE(derived[1].triple == Triple(Term(ex("a")), ex("r"), Term(ex("b"))));
}

TEST(Materialize, ClassAtomsMatchUnderSubclassClosure) {
  // ClassAtom(:Super) must accept an individual typed with :Sub.
  Schema s;
  s.subClassOf.emplace(ex("Sub"), ex("Super"));
  std::vector<Rule> rules = parse_rules(
      "@prefix : <http://example.org/> .\n"
      "up: :Super(?x) -> :seen(?x, ?x)\n",
      example_prefixes());
  Graph g = freeze({Triple(Term(ex("i")), vocab::rdf_type(), Term(ex("Sub")))});
  std::vector<DerivedTriple> derived = materialize(g, s, rules);
  ASSERT_EQ(derived.size(), 1u);
  EXPECT_TRUE(derived[0].triple == Triple(Term(ex("i")), ex("seen"), Term(ex("i"))));
}

TEST(Materialize, DerivedTypeTriplesFeedClassAtoms) {
  // The first rule asserts a type; the second rule's class atom must see
  // it (under closure) in a later round.
  Schema s;
  s.subClassOf.emplace(ex("C"), ex("Super"));
  std::vector<Rule> rules = parse_rules(
      "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
      "@prefix : <http://example.org/> .\n"
      "t1: :p(?x, ?y) -> rdf:type(?x, :C)\n"
      "t2: :Super(?x) -> :q(?x, ?x)\n",
      PrefixMap());
  Graph g = freeze({Triple(Term(ex("a")), ex("p"), Term(ex("b")))});
  std::set<Triple> expected = {Triple(Term(ex("a")), vocab::rdf_type(), Term(ex("C"))),
                               Triple(Term(ex("a")), ex("q"), Term(ex("a")))};
  EXPECT_EQ(derived_set(materialize(g, s, rules)), expected);
  EXPECT_EQ(derived_set(materialize_naive(g, s, rules)), expected);
}

TEST(Materialize, LiteralHeadSubjectIsSkippedByBothEngines) {
  std::vector<Rule> rules = parse_rules(
      "@prefix : <http://example.org/> .\n"
      "flip: :p(?x, ?y) -> :q(?y, ?x)\n",
      PrefixMap());
  Graph g = freeze({Triple(Term(ex("a")), ex("p"), t_lit("literal"))});
  EXPECT_TRUE(materialize(g, Schema{}, rules).empty());
  EXPECT_TRUE(materialize_naive(g, Schema{}, rules).empty());
}

TEST(MaterializeNaive, PublisherFixtureAgrees) {
  Graph g = load_graph("data/publisher-pattern.ttl");
  EXPECT_EQ(derived_set(materialize(g, excerpt_schema(), shortcut_rules())),
            derived_set(materialize_naive(g, excerpt_schema(), shortcut_rules())));
}

TEST(MaterializeProperty, SemiNaiveEqualsNaiveOnRandomInstances) {
  Rng rng(31337);
  Vocabulary v = small_vocabulary();
  for (int round = 0; round < 100; ++round) {
    Graph g = random_graph(rng, v, 100);
    Schema s = random_schema(rng, v);
    std::vector<Rule> rules;
    std::size_t ruleCount = 1 + rng.below(5);
    for (std::size_t i = 0; i < ruleCount; ++i) {
      rules.push_back(random_rule(rng, v, "r" + std::to_string(i), 4));
    }
    ASSERT_EQ(derived_set(materialize(g, s, rules)), derived_set(materialize_naive(g, s, rules)))
        << "seed round " << round;
  }
}

TEST(MaterializeProperty, MonotoneUnderTripleAddition) {
  Rng rng(555);
  Vocabulary v = small_vocabulary();
  for (int round = 0; round < 40; ++round) {
    Graph g = random_graph(rng, v, 60);
    Schema s = random_schema(rng, v);
    std::vector<Rule> rules;
    for (int i = 0; i < 3; ++i) rules.push_back(random_rule(rng, v, "r" + std::to_string(i), 3));

    Triple extra(Term(rng.pick(v.subjects)), rng.pick(v.predicates), rng.pick(v.objects));
    Graph g2;
    g.for_each([&](const Triple& t) { g2.insert(t); });
    g2.insert(extra);
    g2.freeze();

    std::set<Triple> before = triple_set(g);
    for (const Triple& t : derived_set(materialize(g, s, rules))) before.insert(t);
    std::set<Triple> after = triple_set(g2);
    for (const Triple& t : derived_set(materialize(g2, s, rules))) after.insert(t);
    for (const Triple& t : before) {
      EXPECT_TRUE(after.count(t)) << "lost " << to_ntriples(t.subject());
    }
  }
}

TEST(MaterializeProperty, FixpointIsIdempotent) {
  Rng rng(777);
  Vocabulary v = small_vocabulary();
  for (int round = 0; round < 40; ++round) {
    Graph g = random_graph(rng, v, 60);
    Schema s = random_schema(rng, v);
    std::vector<Rule> rules;
    for (int i = 0; i < 3; ++i) rules.push_back(random_rule(rng, v, "r" + std::to_string(i), 3));

    std::vector<DerivedTriple> derived = materialize(g, s, rules);
    Graph extended;
    g.for_each([&](const Triple& t) { extended.insert(t); });
    for (const DerivedTriple& d : derived) extended.insert(d.triple);
    extended.freeze();
    EXPECT_TRUE(materialize(extended, s, rules).empty()) << "round " << round;
  }
}

TEST(MaterializeProperty, ProvenanceIsSound) {
  Rng rng(909);
  Vocabulary v = small_vocabulary();
  for (int round = 0; round < 40; ++round) {
    Graph g = random_graph(rng, v, 60);
    Schema s = random_schema(rng, v);
    std::vector<Rule> rules;
    for (int i = 0; i < 3; ++i) rules.push_back(random_rule(rng, v, "r" + std::to_string(i), 3));
    std::vector<DerivedTriple> derived = materialize(g, s, rules);
    EXPECT_TRUE(provenance_sound(g, s, rules, derived)) << "round " << round;
  }

  Graph fixture = load_graph("data/publisher-pattern.ttl");
  EXPECT_TRUE(provenance_sound(fixture, excerpt_schema(), shortcut_rules(),
                               materialize(fixture, excerpt_schema(), shortcut_rules())));
}
