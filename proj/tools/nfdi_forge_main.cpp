// nfdi-forge: batch CLI over the NFDIcore toolkit. Exit codes: 0 success,
// 1 checks failed (validation errors / failed CQ cases), 2 input or usage
// errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfdiforge/cq.hpp"
#include "nfdiforge/graph.hpp"
#include "nfdiforge/modules.hpp"
#include "nfdiforge/query.hpp"
#include "nfdiforge/rules.hpp"
#include "nfdiforge/schema.hpp"
#include "nfdiforge/turtle.hpp"
#include "nfdiforge/validate.hpp"
#include "nfdiforge/vocab.hpp"

namespace {

namespace fs = std::filesystem;
using namespace nfdiforge;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Dialect dialect_for(const fs::path& path, const std::string& flag) {
  if (flag == "turtle") return Dialect::turtle;
  if (flag == "ntriples") return Dialect::ntriples;
  return path.extension() == ".nt" ? Dialect::ntriples : Dialect::turtle;
}

Graph load_data(const fs::path& path, const std::string& dialectFlag = "") {
  return parse(read_file(path), Iri("urn:nfdiforge:base#"), dialect_for(path, dialectFlag));
}

struct Ontology {
  Graph graph;
  Schema schema;
};

Ontology load_ontology(const fs::path& manifestPath) {
  ModuleManifest root = load_manifest(manifestPath);
  fs::path registryDir = manifestPath.parent_path();
  if (const char* env = std::getenv("NFDI_FORGE_MODULE_PATH"); env != nullptr && *env != '\0') {
    registryDir = env;
  }
  ModuleRegistry registry = ModuleRegistry::from_directory(registryDir);
  registry.add(root);
  Graph merged = resolve_modules(root, registry);
  Schema schema = extract_schema(merged);
  return Ontology{std::move(merged), std::move(schema)};
}

std::vector<Rule> load_rules(const fs::path& path) {
  return parse_rules(read_file(path), PrefixMap());
}

Graph with_derived(const Graph& data, const std::vector<DerivedTriple>& derived) {
  Graph merged;
  merged.prefixes().merge_lenient(data.prefixes());
  data.for_each([&](const Triple& t) { merged.insert(t); });
  for (const DerivedTriple& d : derived) merged.insert(d.triple);
  merged.freeze();
  return merged;
}

void write_output(const std::string& text, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(outPath, std::ios::binary);
  if (!out) throw Error("cannot write file: " + outPath);
  out << text;
}

// --- subcommand bodies ------------------------------------------------------

int cmd_parse(const std::string& file, const std::string& dialectFlag, bool json) {
  Graph g = load_data(file, dialectFlag);
  if (json) {
    nlohmann::ordered_json doc{{"file", file}, {"triples", g.size()}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << g.size() << " triples\n";
  }
  return 0;
}

int cmd_validate(const std::string& manifest, const std::string& data, bool postMaterialize,
                 const std::string& rulesFile, bool json) {
  Ontology ontology = load_ontology(manifest);
  Graph instance = load_data(data);
  ValidationReport report;
  if (postMaterialize) {
    std::vector<Rule> rules = load_rules(rulesFile);
    Graph merged = with_derived(instance, materialize(instance, ontology.schema, rules));
    report = validate(merged, ontology.schema);
  } else {
    report = validate(instance, ontology.schema);
  }
  std::cout << (json ? report.to_json() : report.to_table());
  return report.error_count() > 0 ? 1 : 0;
}

int cmd_materialize(const std::string& manifest, const std::string& data,
                    const std::string& rulesFile, const std::string& emit,
                    const std::string& outPath) {
  Ontology ontology = load_ontology(manifest);
  Graph instance = load_data(data);
  std::vector<Rule> rules = load_rules(rulesFile);
  std::vector<DerivedTriple> derived = materialize(instance, ontology.schema, rules);

  PrefixMap prefixes = instance.prefixes();
  prefixes.merge_lenient(ontology.graph.prefixes());

  Graph output;
  if (emit == "asserted") {
    instance.for_each([&](const Triple& t) { output.insert(t); });
  } else if (emit == "inferred") {
    for (const DerivedTriple& d : derived) output.insert(d.triple);
  } else {  // merged
    instance.for_each([&](const Triple& t) { output.insert(t); });
    for (const DerivedTriple& d : derived) output.insert(d.triple);
  }
  output.freeze();
  write_output(serialize(output, prefixes, Dialect::turtle), outPath);
  return 0;
}

int cmd_query(const std::string& manifest, const std::string& data, const std::string& rulesFile,
              const std::string& queryFile, const std::string& entailmentFlag, bool noMaterialize,
              bool json) {
  Ontology ontology = load_ontology(manifest);
  Graph instance = load_data(data);
  Graph target;
  if (noMaterialize) {
    target = std::move(instance);
  } else {
    std::vector<Rule> rules = load_rules(rulesFile);
    target = with_derived(instance, materialize(instance, ontology.schema, rules));
  }
  Query q = parse_query(read_file(queryFile));
  Entailment entailment = entailmentFlag == "none" ? Entailment::none : Entailment::rdfs;
  SolutionSet sol = evaluate(q, target, ontology.schema, entailment);

  if (json) {
    nlohmann::ordered_json doc;
    doc["vars"] = sol.header;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : sol.rows) {
      nlohmann::ordered_json r;
      for (std::size_t i = 0; i < sol.header.size(); ++i) {
        r[sol.header[i]] = to_ntriples(row[i]);
      }
      doc["rows"].push_back(std::move(r));
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < sol.header.size(); ++i) {
      std::cout << (i ? "\t" : "") << "?" << sol.header[i];
    }
    std::cout << "\n";
    for (const auto& row : sol.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::cout << (i ? "\t" : "") << to_ntriples(row[i]);
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_cq(const std::string& manifest, const std::string& data, const std::string& rulesFile,
           const std::string& suiteFile, bool json) {
  Ontology ontology = load_ontology(manifest);
  Graph instance = load_data(data);
  std::vector<Rule> rules = load_rules(rulesFile);
  std::vector<CqCase> suite = load_suite(read_file(suiteFile));
  CqReport report = run_suite(suite, instance, ontology.schema, rules);
  std::cout << (json ? report.to_json() : report.to_table());
  return report.failed() > 0 ? 1 : 0;
}

int cmd_stats(const std::string& data, bool json) {
  Graph g = load_data(data);
  std::map<Iri, std::size_t> classUse;
  std::map<Iri, std::size_t> predicateUse;
  g.for_each([&](const Triple& t) {
    ++predicateUse[t.predicate()];
    if (t.predicate() == vocab::rdf_type() && is_iri(t.object())) {
      ++classUse[std::get<Iri>(t.object())];
    }
  });
  if (json) {
    nlohmann::ordered_json doc;
    doc["triples"] = g.size();
    doc["classes"] = nlohmann::ordered_json::object();
    for (const auto& [cls, n] : classUse) doc["classes"][cls.value()] = n;
    doc["predicates"] = nlohmann::ordered_json::object();
    for (const auto& [p, n] : predicateUse) doc["predicates"][p.value()] = n;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << g.size() << " triples\n";
    std::cout << "classes:\n";
    for (const auto& [cls, n] : classUse) std::cout << "  " << cls.value() << "  " << n << "\n";
    std::cout << "predicates:\n";
    for (const auto& [p, n] : predicateUse) std::cout << "  " << p.value() << "  " << n << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NFDIcore knowledge-graph toolkit"};
  app.require_subcommand(1);

  std::string manifest, data, file, rulesFile, queryFile, suiteFile, outPath;
  std::string dialectFlag, emit = "merged", entailmentFlag = "rdfs";
  bool json = false, postMaterialize = false, noMaterialize = false;

  auto* parseCmd = app.add_subcommand("parse", "Syntax-check a Turtle/N-Triples file");
  parseCmd->add_option("FILE", file)->required();
  parseCmd->add_option("--dialect", dialectFlag)->check(CLI::IsMember({"turtle", "ntriples"}));
  parseCmd->add_flag("--json", json);

  auto* validateCmd = app.add_subcommand("validate", "Check BFO/NFDIcore constraints");
  validateCmd->add_option("MANIFEST", manifest)->required();
  validateCmd->add_option("DATA", data)->required();
  auto* pmFlag = validateCmd->add_flag("--post-materialize", postMaterialize);
  validateCmd->add_option("--rules", rulesFile)->needs(pmFlag);
  pmFlag->needs(validateCmd->get_option("--rules"));
  validateCmd->add_flag("--json", json);

  auto* matCmd = app.add_subcommand("materialize", "Forward-chain shortcut rules");
  matCmd->add_option("MANIFEST", manifest)->required();
  matCmd->add_option("DATA", data)->required();
  matCmd->add_option("--rules", rulesFile)->required();
  matCmd->add_option("--emit", emit)->check(CLI::IsMember({"asserted", "inferred", "merged"}));
  matCmd->add_option("-o,--output", outPath);

  auto* queryCmd = app.add_subcommand("query", "Evaluate a SELECT query");
  queryCmd->add_option("MANIFEST", manifest)->required();
  queryCmd->add_option("DATA", data)->required();
  queryCmd->add_option("--rules", rulesFile);
  queryCmd->add_option("-q,--query", queryFile)->required();
  queryCmd->add_option("--entailment", entailmentFlag)->check(CLI::IsMember({"rdfs", "none"}));
  queryCmd->add_flag("--no-materialize", noMaterialize);
  queryCmd->add_flag("--json", json);

  auto* cqCmd = app.add_subcommand("cq", "Run a competency-question suite");
  cqCmd->add_option("MANIFEST", manifest)->required();
  cqCmd->add_option("DATA", data)->required();
  cqCmd->add_option("--rules", rulesFile)->required();
  cqCmd->add_option("--suite", suiteFile)->required();
  cqCmd->add_flag("--json", json);

  auto* statsCmd = app.add_subcommand("stats", "Class and property usage counts");
  statsCmd->add_option("DATA", data)->required();
  statsCmd->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (parseCmd->parsed()) return cmd_parse(file, dialectFlag, json);
    if (validateCmd->parsed()) {
      return cmd_validate(manifest, data, postMaterialize, rulesFile, json);
    }
    if (matCmd->parsed()) return cmd_materialize(manifest, data, rulesFile, emit, outPath);
    if (queryCmd->parsed()) {
      if (!noMaterialize && rulesFile.empty()) {
        std::cerr << "error: query needs --rules unless --no-materialize is given\n";
        return 2;
      }
      return cmd_query(manifest, data, rulesFile, queryFile, entailmentFlag, noMaterialize, json);
    }
    if (cqCmd->parsed()) return cmd_cq(manifest, data, rulesFile, suiteFile, json);
    if (statsCmd->parsed()) return cmd_stats(data, json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
