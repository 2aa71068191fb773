#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "nfdiforge/turtle.hpp"
#include "test_support.hpp"

using namespace nfdiforge;
using namespace testsupport;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

// Runs the CLI through the shell, capturing stdout/stderr separately.
RunResult run_cli(const std::string& args, const std::string& envPrefix = "") {
  static int counter = 0;
  fs::path outFile = fs::temp_directory_path() / ("nfdiforge-out-" + std::to_string(counter));
  fs::path errFile = fs::temp_directory_path() / ("nfdiforge-err-" + std::to_string(counter));
  ++counter;
  std::string cmd = envPrefix + std::string(NFDIFORGE_CLI_PATH) + " " + args + " >" +
                    outFile.string() + " 2>" + errFile.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(status);
  r.out = read_file(outFile);
  r.err = read_file(errFile);
  fs::remove(outFile);
  fs::remove(errFile);
  return r;
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

std::string fx(const std::string& rel) { return fixture_path(rel).string(); }
std::string rulesFile() { return (repo_dir() / "rules" / "shortcuts.rules").string(); }

}  // namespace

TEST(CliParse, EmptyFileReportsZeroTriples) {
  fs::path empty = fs::temp_directory_path() / "nfdiforge-empty.ttl";
  std::ofstream(empty).close();
  RunResult r = run_cli("parse " + empty.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "0 triples");
}

TEST(CliParse, FixtureCountsAndDialects) {
  RunResult r = run_cli("parse " + fx("data/publisher-pattern.ttl"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "8 triples");

  RunResult nt = run_cli("parse " + fx("data/publisher-pattern.nt"));
  EXPECT_EQ(nt.code, 0);
  EXPECT_EQ(first_line(nt.out), "8 triples");

  // Forcing the wrong dialect must fail with an input error.
  RunResult wrong = run_cli("parse --dialect ntriples " + fx("data/publisher-pattern.ttl"));
  EXPECT_EQ(wrong.code, 2);
  EXPECT_FALSE(wrong.err.empty());
}

TEST(CliParse, SyntaxErrorsExitTwoWithPosition) {
  RunResult r = run_cli("parse " + fx("bad/bad-unterminated.ttl"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  RunResult missing = run_cli("parse /nonexistent/nope.ttl");
  EXPECT_EQ(missing.code, 2);
}

TEST(CliValidate, ExitCodesFollowViolations) {
  RunResult clean =
      run_cli("validate " + fx("ontology/nfdicore.json") + " " + fx("data/publisher-pattern.ttl"));
  EXPECT_EQ(clean.code, 0);
  EXPECT_NE(first_line(clean.out).find("0 error(s)"), std::string::npos);

  RunResult seeded = run_cli("validate " + fx("ontology/nfdicore.json") + " " +
                             fx("seeds/seed-role-bearer-not-ic.ttl"));
  EXPECT_EQ(seeded.code, 1);
  EXPECT_NE(seeded.out.find("ROLE_BEARER_NOT_IC"), std::string::npos);

  // Warnings and notices do not fail the run.
  RunResult warned = run_cli("validate " + fx("ontology/nfdicore.json") + " " +
                             fx("seeds/seed-role-without-bearer.ttl"));
  EXPECT_EQ(warned.code, 0);
  EXPECT_NE(warned.out.find("ROLE_WITHOUT_BEARER"), std::string::npos);
}

TEST(CliValidate, PostMaterializeNeedsRules) {
  RunResult missing = run_cli("validate " + fx("ontology/nfdicore.json") + " " +
                              fx("data/cq-data.ttl") + " --post-materialize");
  EXPECT_EQ(missing.code, 2);

  RunResult post = run_cli("validate " + fx("ontology/nfdicore.json") + " " +
                           fx("data/cq-data.ttl") + " --post-materialize --rules " + rulesFile());
  EXPECT_EQ(post.code, 1);
  EXPECT_NE(post.out.find("DOMAIN_VIOLATION"), std::string::npos);
}

TEST(CliMaterialize, InferredEmissionIsExactlyThePublisherTriple) {
  RunResult r = run_cli("materialize " + fx("ontology/nfdicore.json") + " " +
                        fx("data/publisher-pattern.ttl") + " --rules " + rulesFile() +
                        " --emit inferred");
  ASSERT_EQ(r.code, 0);
  Graph inferred = parse(r.out, Iri("urn:test:base#"), Dialect::turtle);
  ASSERT_EQ(inferred.size(), 1u);
  EXPECT_TRUE(inferred.contains(Triple(t_iri("https://example.org/nfdi/ds1"),
                                       Iri("https://nfdi.fiz-karlsruhe.de/ontology/publisher"),
                                       t_iri("https://example.org/nfdi/fiz"))));
}

TEST(CliMaterialize, MergedOutputReParsesToInMemoryMerge) {
  fs::path outPath = fs::temp_directory_path() / "nfdiforge-merged.ttl";
  RunResult r = run_cli("materialize " + fx("ontology/nfdicore.json") + " " +
                        fx("data/publisher-pattern.ttl") + " --rules " + rulesFile() +
                        " --emit merged -o " + outPath.string());
  ASSERT_EQ(r.code, 0);

  Graph expected;
  load_graph("data/publisher-pattern.ttl").for_each([&](const Triple& t) {
    expected.insert(t);
  });
  expected.insert(Triple(t_iri("https://example.org/nfdi/ds1"),
                         Iri("https://nfdi.fiz-karlsruhe.de/ontology/publisher"),
                         t_iri("https://example.org/nfdi/fiz")));
  expected.freeze();

  Graph emitted = parse(read_file(outPath), Iri("urn:test:base#"), Dialect::turtle);
  EXPECT_TRUE(graph_isomorphic(emitted, expected));
  fs::remove(outPath);
}

TEST(CliQuery, TsvAndJsonOutputs) {
  std::string base = "query " + fx("ontology/nfdicore.json") + " " +
                     fx("data/eq-contact-basic.ttl") + " --rules " + rulesFile() + " -q " +
                     fx("queries/contact-shortcut.rq");
  RunResult tsv = run_cli(base);
  ASSERT_EQ(tsv.code, 0);
  EXPECT_EQ(first_line(tsv.out), "?service\t?contactPoint");
  EXPECT_NE(tsv.out.find("<https://example.org/nfdi/svc1>\t<https://example.org/nfdi/personA>"),
            std::string::npos);

  RunResult json = run_cli(base + " --json");
  ASSERT_EQ(json.code, 0);
  EXPECT_NE(json.out.find("\"service\": \"<https://example.org/nfdi/svc1>\""),
            std::string::npos);

  // Without materialization the shortcut has nothing to match.
  RunResult noMat = run_cli(base + " --no-materialize");
  ASSERT_EQ(noMat.code, 0);
  EXPECT_EQ(noMat.out, "?service\t?contactPoint\n");

  // The complex form works pre-materialization with rdfs entailment.
  RunResult complexPre = run_cli("query " + fx("ontology/nfdicore.json") + " " +
                                 fx("data/eq-contact-basic.ttl") + " --no-materialize -q " +
                                 fx("queries/contact-complex.rq") + " --entailment rdfs");
  ASSERT_EQ(complexPre.code, 0);
  EXPECT_NE(complexPre.out.find("personA"), std::string::npos);
}

TEST(CliQuery, UnsupportedFeatureIsInputError) {
  fs::path queryFile = fs::temp_directory_path() / "nfdiforge-filter.rq";
  {
    std::ofstream out(queryFile);
    out << "SELECT ?s WHERE { ?s ?p ?o . FILTER(?s) }";
  }
  RunResult r = run_cli("query " + fx("ontology/nfdicore.json") + " " +
                        fx("data/eq-contact-basic.ttl") + " --no-materialize -q " +
                        queryFile.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("FILTER"), std::string::npos);
  fs::remove(queryFile);
}

TEST(CliCq, SuiteRunsGreen) {
  RunResult r = run_cli("cq " + fx("ontology/all.json") + " " + fx("data/cq-data.ttl") +
                        " --rules " + rulesFile() + " --suite " +
                        (repo_dir() / "suites" / "suite-core.json").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(first_line(r.out).find("12 passed, 0 failed, 3 skipped-unanswerable"),
            std::string::npos);
}

TEST(CliCq, JsonReportIsDeterministic) {
  std::string cmd = "cq " + fx("ontology/all.json") + " " + fx("data/cq-data.ttl") + " --rules " +
                    rulesFile() + " --suite " +
                    (repo_dir() / "suites" / "suite-core.json").string() + " --json";
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliStats, CountsClassesAndPredicates) {
  RunResult r = run_cli("stats " + fx("data/publisher-pattern.ttl") + " --json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"triples\": 8"), std::string::npos);
  EXPECT_NE(r.out.find("\"https://nfdi.fiz-karlsruhe.de/ontology/Dataset\": 1"),
            std::string::npos);
  EXPECT_NE(r.out.find("\"http://purl.obolibrary.org/obo/RO_0000056\": 2"), std::string::npos);
}

TEST(CliModules, EnvVarOverridesRegistryDirectory) {
  // Copy the cto manifest elsewhere; resolution only works when the
  // registry env var points back at the fixture directory.
  fs::path dir = fs::temp_directory_path() / "nfdiforge-manifest-only";
  fs::create_directories(dir);
  std::ofstream(dir / "root.json") << R"({"id": "root", "graph": "root.ttl", "imports": ["nfdicore"]})";
  std::ofstream(dir / "root.ttl") << "";

  RunResult without = run_cli("parse " + fx("data/publisher-pattern.ttl"));
  EXPECT_EQ(without.code, 0);  // unrelated sanity

  RunResult broken = run_cli("validate " + (dir / "root.json").string() + " " +
                             fx("data/publisher-pattern.ttl"));
  EXPECT_EQ(broken.code, 2);
  EXPECT_NE(broken.err.find("nfdicore"), std::string::npos);

  RunResult ok = run_cli("validate " + (dir / "root.json").string() + " " +
                             fx("data/publisher-pattern.ttl"),
                         "NFDI_FORGE_MODULE_PATH=" + fx("ontology") + " ");
  EXPECT_EQ(ok.code, 0);
}

TEST(CliUsage, BadInvocationsExitTwo) {
  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("materialize onlyonearg").code, 2);
  EXPECT_EQ(run_cli("cq " + fx("ontology/all.json") + " " + fx("data/cq-data.ttl") +
                    " --rules " + rulesFile() + " --suite /nonexistent.json")
                .code,
            2);
}
