#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nfdiforge/graph.hpp"
#include "nfdiforge/query.hpp"
#include "nfdiforge/rules.hpp"
#include "nfdiforge/schema.hpp"

namespace nfdiforge {

enum class CqCategory { services, standards, processes, events, contact_points, other };
enum class CqMode { query, equivalence, unanswerable };

const char* to_string(CqCategory category);
const char* to_string(CqMode mode);

struct CqExpectation {
  enum class Kind { min_rows, exact_rows, row_set };
  Kind kind = Kind::min_rows;
  std::size_t rows = 0;
  // Expected rows with term text (CURIE, <iri>, or literal syntax) resolved
  // against the query's prefixes at run time.
  std::vector<std::map<std::string, std::string>> rowSet;
};

/// One competency question. query mode runs `query` on the materialized
/// graph against `expectation`; equivalence mode runs `query` on the
/// asserted graph and `altQuery` on the materialized graph and compares the
/// solution sets under `varMap`; unanswerable cases are recorded as skipped
/// with their rationale echoed.
struct CqCase {
  std::string id;
  CqCategory category = CqCategory::other;
  std::string question;
  CqMode mode = CqMode::query;
  std::string query;
  std::string altQuery;
  std::optional<CqExpectation> expectation;
  std::map<std::string, std::string> varMap;  // query var -> altQuery var
  std::string rationale;
  Entailment entailment = Entailment::rdfs;
};

class CqError : public Error {
 public:
  using Error::Error;
};

/// Loads and validates a suite (JSON array of cases; see docs/cq-format.md).
/// Throws CqError naming the offending case on malformed input, duplicate
/// ids, and mode/field mismatches.
std::vector<CqCase> load_suite(const std::string& jsonText);

enum class CqOutcome { pass, fail, skipped_unanswerable };

const char* to_string(CqOutcome outcome);

struct CqCaseResult {
  std::string id;
  CqCategory category;
  CqMode mode;
  CqOutcome outcome;
  std::string diagnostics;
};

struct CqReport {
  std::vector<CqCaseResult> cases;  // sorted by case id

  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t skipped() const;

  std::string to_json() const;
  std::string to_table() const;
};

struct CqRunOptions {
  // Shared materialization is the normal mode; per-case re-materialization
  // exists to let tests pin down that results do not depend on sharing.
  bool rematerializePerCase = false;
};

CqReport run_suite(const std::vector<CqCase>& suite, const Graph& g, const Schema& s,
                   const std::vector<Rule>& rules, const CqRunOptions& options = {});

}  // namespace nfdiforge
