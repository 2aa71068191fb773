#include "nfdiforge/cq.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nfdiforge {

const char* to_string(CqCategory category) {
  switch (category) {
    case CqCategory::services: return "services";
    case CqCategory::standards: return "standards";
    case CqCategory::processes: return "processes";
    case CqCategory::events: return "events";
    case CqCategory::contact_points: return "contact-points";
    case CqCategory::other: return "other";
  }
  return "?";
}

const char* to_string(CqMode mode) {
  switch (mode) {
    case CqMode::query: return "query";
    case CqMode::equivalence: return "equivalence";
    case CqMode::unanswerable: return "unanswerable";
  }
  return "?";
}

const char* to_string(CqOutcome outcome) {
  switch (outcome) {
    case CqOutcome::pass: return "pass";
    case CqOutcome::fail: return "fail";
    case CqOutcome::skipped_unanswerable: return "skipped-unanswerable";
  }
  return "?";
}

namespace {

CqCategory parse_category(const std::string& s, const std::string& caseId) {
  if (s == "services") return CqCategory::services;
  if (s == "standards") return CqCategory::standards;
  if (s == "processes") return CqCategory::processes;
  if (s == "events") return CqCategory::events;
  if (s == "contact-points") return CqCategory::contact_points;
  if (s == "other") return CqCategory::other;
  throw CqError("case '" + caseId + "': unknown category '" + s + "'");
}

CqMode parse_mode(const std::string& s, const std::string& caseId) {
  if (s == "query") return CqMode::query;
  if (s == "equivalence") return CqMode::equivalence;
  if (s == "unanswerable") return CqMode::unanswerable;
  throw CqError("case '" + caseId + "': unknown mode '" + s + "'");
}

std::string require_string(const nlohmann::json& obj, const std::string& field,
                           const std::string& caseId) {
  if (!obj.contains(field) || !obj[field].is_string()) {
    throw CqError("case '" + caseId + "': missing string field '" + field + "'");
  }
  return obj[field].get<std::string>();
}

CqExpectation parse_expectation(const nlohmann::json& obj, const std::string& caseId) {
  CqExpectation e;
  int kinds = (obj.contains("minRows") ? 1 : 0) + (obj.contains("exactRows") ? 1 : 0) +
              (obj.contains("rows") ? 1 : 0);
  if (kinds != 1) {
    throw CqError("case '" + caseId +
                  "': expectation needs exactly one of minRows, exactRows, rows");
  }
  if (obj.contains("minRows")) {
    if (!obj["minRows"].is_number_unsigned()) {
      throw CqError("case '" + caseId + "': minRows must be a non-negative integer");
    }
    e.kind = CqExpectation::Kind::min_rows;
    e.rows = obj["minRows"].get<std::size_t>();
  } else if (obj.contains("exactRows")) {
    if (!obj["exactRows"].is_number_unsigned()) {
      throw CqError("case '" + caseId + "': exactRows must be a non-negative integer");
    }
    e.kind = CqExpectation::Kind::exact_rows;
    e.rows = obj["exactRows"].get<std::size_t>();
  } else {
    if (!obj["rows"].is_array()) {
      throw CqError("case '" + caseId + "': rows must be an array of objects");
    }
    e.kind = CqExpectation::Kind::row_set;
    for (const auto& row : obj["rows"]) {
      if (!row.is_object()) {
        throw CqError("case '" + caseId + "': rows must be an array of objects");
      }
      std::map<std::string, std::string> m;
      for (const auto& [var, value] : row.items()) {
        if (!value.is_string()) {
          throw CqError("case '" + caseId + "': expected row values must be strings");
        }
        m.emplace(var, value.get<std::string>());
      }
      e.rowSet.push_back(std::move(m));
    }
  }
  return e;
}

}  // namespace

std::vector<CqCase> load_suite(const std::string& jsonText) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(jsonText);
  } catch (const nlohmann::json::exception& e) {
    throw CqError(std::string("malformed suite document: ") + e.what());
  }
  if (!doc.is_array()) throw CqError("suite document must be a JSON array of cases");

  std::vector<CqCase> suite;
  std::set<std::string> ids;
  for (const auto& obj : doc) {
    if (!obj.is_object()) throw CqError("suite entries must be objects");
    CqCase c;
    c.id = require_string(obj, "id", obj.contains("id") && obj["id"].is_string()
                                         ? obj["id"].get<std::string>()
                                         : "<unnamed>");
    if (!ids.insert(c.id).second) throw CqError("duplicate case id '" + c.id + "'");
    c.category = parse_category(require_string(obj, "category", c.id), c.id);
    c.question = require_string(obj, "question", c.id);
    c.mode = parse_mode(require_string(obj, "mode", c.id), c.id);
    if (obj.contains("entailment")) {
      std::string e = require_string(obj, "entailment", c.id);
      if (e == "none") c.entailment = Entailment::none;
      else if (e == "rdfs") c.entailment = Entailment::rdfs;
      else throw CqError("case '" + c.id + "': unknown entailment '" + e + "'");
    }

    bool hasQuery = obj.contains("query");
    bool hasAlt = obj.contains("altQuery");
    bool hasExpectation = obj.contains("expectation");
    switch (c.mode) {
      case CqMode::query:
        if (!hasQuery) throw CqError("case '" + c.id + "': mode=query requires 'query'");
        if (hasAlt) throw CqError("case '" + c.id + "': mode=query forbids 'altQuery'");
        if (!hasExpectation) {
          throw CqError("case '" + c.id + "': mode=query requires 'expectation'");
        }
        c.query = require_string(obj, "query", c.id);
        break;
      case CqMode::equivalence: {
        if (!hasQuery || !hasAlt) {
          throw CqError("case '" + c.id + "': mode=equivalence requires 'query' and 'altQuery'");
        }
        c.query = require_string(obj, "query", c.id);
        c.altQuery = require_string(obj, "altQuery", c.id);
        if (!obj.contains("varMap") || !obj["varMap"].is_object()) {
          throw CqError("case '" + c.id + "': mode=equivalence requires 'varMap'");
        }
        for (const auto& [from, to] : obj["varMap"].items()) {
          if (!to.is_string()) {
            throw CqError("case '" + c.id + "': varMap values must be strings");
          }
          c.varMap.emplace(from, to.get<std::string>());
        }
        break;
      }
      case CqMode::unanswerable:
        if (hasQuery || hasAlt) {
          throw CqError("case '" + c.id + "': mode=unanswerable forbids query fields");
        }
        if (hasExpectation) {
          throw CqError("case '" + c.id + "': mode=unanswerable forbids 'expectation'");
        }
        c.rationale = require_string(obj, "rationale", c.id);
        break;
    }
    if (hasExpectation) c.expectation = parse_expectation(obj["expectation"], c.id);
    suite.push_back(std::move(c));
  }
  return suite;
}

std::size_t CqReport::passed() const {
  return static_cast<std::size_t>(std::count_if(
      cases.begin(), cases.end(),
      [](const CqCaseResult& r) { return r.outcome == CqOutcome::pass; }));
}
std::size_t CqReport::failed() const {
  return static_cast<std::size_t>(std::count_if(
      cases.begin(), cases.end(),
      [](const CqCaseResult& r) { return r.outcome == CqOutcome::fail; }));
}
std::size_t CqReport::skipped() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CqCaseResult& r) {
    return r.outcome == CqOutcome::skipped_unanswerable;
  }));
}

std::string CqReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["summary"] = {{"total", cases.size()},
                    {"passed", passed()},
                    {"failed", failed()},
                    {"skippedUnanswerable", skipped()}};
  doc["cases"] = nlohmann::ordered_json::array();
  for (const CqCaseResult& r : cases) {
    doc["cases"].push_back({{"id", r.id},
                            {"category", to_string(r.category)},
                            {"mode", to_string(r.mode)},
                            {"outcome", to_string(r.outcome)},
                            {"diagnostics", r.diagnostics}});
  }
  return doc.dump(2) + "\n";
}

std::string CqReport::to_table() const {
  std::ostringstream out;
  out << "CQ suite: " << cases.size() << " case(s), " << passed() << " passed, " << failed()
      << " failed, " << skipped() << " skipped-unanswerable\n";
  for (const CqCaseResult& r : cases) {
    out << "  " << to_string(r.outcome) << "  " << r.id << " [" << to_string(r.category) << "/"
        << to_string(r.mode) << "]";
    if (!r.diagnostics.empty()) out << " -- " << r.diagnostics;
    out << "\n";
  }
  return out.str();
}

namespace {

// Parses one expected-row term: <iri>, CURIE, "literal"(@tag|^^dt), _:label.
Term parse_term_text(const std::string& text, const PrefixMap& pm) {
  if (text.empty()) throw CqError("empty term text in expected row");
  if (text.front() == '<') {
    if (text.back() != '>') throw CqError("unterminated IRI in expected row: " + text);
    return Term(Iri(text.substr(1, text.size() - 2)));
  }
  if (text.rfind("_:", 0) == 0) return Term(BlankNode(text.substr(2)));
  if (text.front() == '"') {
    std::size_t close = text.rfind('"');
    if (close == 0) throw CqError("unterminated literal in expected row: " + text);
    std::string lexical = text.substr(1, close - 1);
    std::string suffix = text.substr(close + 1);
    if (suffix.empty()) return Term(Literal::plain(lexical));
    if (suffix[0] == '@') return Term(Literal::tagged(lexical, suffix.substr(1)));
    if (suffix.rfind("^^", 0) == 0) {
      std::string dt = suffix.substr(2);
      Iri datatype = dt.front() == '<' ? Iri(dt.substr(1, dt.size() - 2)) : pm.expand(dt);
      return Term(Literal::typed(lexical, datatype));
    }
    throw CqError("malformed literal in expected row: " + text);
  }
  return Term(pm.expand(text));
}

// Canonical one-line rendering of a solution row for set comparison and
// diagnostics.
std::string row_key(const std::map<std::string, Term>& row) {
  std::string key;
  for (const auto& [var, term] : row) {
    key += "?" + var + "=" + to_ntriples(term) + " ";
  }
  return key;
}

std::string describe_difference(const std::set<std::string>& left,
                                const std::set<std::string>& right) {
  for (const std::string& k : left) {
    if (!right.count(k)) return "row only in first set: " + k;
  }
  for (const std::string& k : right) {
    if (!left.count(k)) return "row only in second set: " + k;
  }
  return "";
}

struct ExpectationOutcome {
  bool ok;
  std::string diagnostics;
};

ExpectationOutcome check_expectation(const CqExpectation& expectation, const SolutionSet& sol,
                                     const PrefixMap& pm) {
  switch (expectation.kind) {
    case CqExpectation::Kind::min_rows:
      if (sol.rows.size() >= expectation.rows) {
        return {true, std::to_string(sol.rows.size()) + " row(s)"};
      }
      return {false, "expected at least " + std::to_string(expectation.rows) + " row(s), got " +
                         std::to_string(sol.rows.size())};
    case CqExpectation::Kind::exact_rows:
      if (sol.rows.size() == expectation.rows) {
        return {true, std::to_string(sol.rows.size()) + " row(s)"};
      }
      return {false, "expected exactly " + std::to_string(expectation.rows) + " row(s), got " +
                         std::to_string(sol.rows.size())};
    case CqExpectation::Kind::row_set: {
      std::set<std::string> expected;
      std::set<std::string> headerSet(sol.header.begin(), sol.header.end());
      for (const auto& rowText : expectation.rowSet) {
        std::map<std::string, Term> row;
        for (const auto& [var, text] : rowText) {
          if (!headerSet.count(var)) {
            return {false, "expected row names unknown variable ?" + var};
          }
          row.emplace(var, parse_term_text(text, pm));
        }
        if (row.size() != headerSet.size()) {
          return {false, "expected rows must bind every projected variable"};
        }
        expected.insert(row_key(row));
      }
      std::set<std::string> actual;
      for (const auto& row : sol.as_maps()) actual.insert(row_key(row));
      if (expected == actual) return {true, std::to_string(actual.size()) + " row(s) as expected"};
      return {false, describe_difference(expected, actual)};
    }
  }
  return {false, "unreachable"};
}

}  // namespace

CqReport run_suite(const std::vector<CqCase>& suite, const Graph& g, const Schema& s,
                   const std::vector<Rule>& rules, const CqRunOptions& options) {
  auto materialized_graph = [&]() {
    Graph post;
    g.for_each([&](const Triple& t) { post.insert(t); });
    for (const DerivedTriple& d : materialize(g, s, rules)) post.insert(d.triple);
    post.freeze();
    return post;
  };

  Graph shared;
  if (!options.rematerializePerCase) shared = materialized_graph();

  std::vector<const CqCase*> ordered;
  for (const CqCase& c : suite) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(),
            [](const CqCase* a, const CqCase* b) { return a->id < b->id; });

  CqReport report;
  for (const CqCase* casePtr : ordered) {
    const CqCase& c = *casePtr;
    CqCaseResult result{c.id, c.category, c.mode, CqOutcome::fail, ""};
    try {
      Graph perCase;
      if (options.rematerializePerCase) perCase = materialized_graph();
      const Graph& post = options.rematerializePerCase ? perCase : shared;
      switch (c.mode) {
        case CqMode::unanswerable:
          result.outcome = CqOutcome::skipped_unanswerable;
          result.diagnostics = c.rationale;
          break;
        case CqMode::query: {
          Query q = parse_query(c.query);
          SolutionSet sol = evaluate(q, post, s, c.entailment);
          ExpectationOutcome out = check_expectation(*c.expectation, sol, q.prefixes);
          result.outcome = out.ok ? CqOutcome::pass : CqOutcome::fail;
          result.diagnostics = out.diagnostics;
          break;
        }
        case CqMode::equivalence: {
          Query q = parse_query(c.query);
          Query alt = parse_query(c.altQuery);
          SolutionSet pre = evaluate(q, g, s, c.entailment);
          SolutionSet postSol = evaluate(alt, post, s, c.entailment);

          std::set<std::string> altHeader(postSol.header.begin(), postSol.header.end());
          std::set<std::string> mappedRows;
          bool mappingOk = true;
          for (const auto& row : pre.as_maps()) {
            std::map<std::string, Term> mapped;
            for (const auto& [var, term] : row) {
              auto it = c.varMap.find(var);
              if (it == c.varMap.end() || !altHeader.count(it->second)) {
                result.diagnostics = "varMap does not map ?" + var + " onto an altQuery variable";
                mappingOk = false;
                break;
              }
              mapped.emplace(it->second, term);
            }
            if (!mappingOk) break;
            mappedRows.insert(row_key(mapped));
          }
          if (!mappingOk) break;
          if (pre.header.size() != postSol.header.size()) {
            result.diagnostics = "queries project a different number of variables";
            break;
          }
          std::set<std::string> altRows;
          for (const auto& row : postSol.as_maps()) altRows.insert(row_key(row));
          if (mappedRows != altRows) {
            result.diagnostics =
                "solution sets differ: " + describe_difference(mappedRows, altRows);
            break;
          }
          if (c.expectation) {
            ExpectationOutcome out = check_expectation(*c.expectation, pre, q.prefixes);
            result.outcome = out.ok ? CqOutcome::pass : CqOutcome::fail;
            result.diagnostics = out.ok ? "solution sets equal; " + out.diagnostics
                                        : out.diagnostics;
          } else {
            result.outcome = CqOutcome::pass;
            result.diagnostics = std::to_string(postSol.rows.size()) + " row(s) on both forms";
          }
          break;
        }
      }
    } catch (const Error& e) {
      result.outcome = CqOutcome::fail;
      result.diagnostics = e.what();
    }
    report.cases.push_back(std::move(result));
  }
  return report;
}

}  // namespace nfdiforge
