#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nfdiforge/graph.hpp"
#include "nfdiforge/schema.hpp"

namespace nfdiforge {

enum class ViolationCode {
  ROLE_BEARER_NOT_IC,
  ROLE_NOT_REALIZED,
  ROLE_WITHOUT_BEARER,
  CONTINUANT_OCCURRENT_OVERLAP,
  DOMAIN_VIOLATION,
  RANGE_VIOLATION,
  PROCESS_AS_RESOURCE_NOTICE,
};

enum class Severity { error, warning, notice };

const char* to_string(ViolationCode code);
const char* to_string(Severity severity);

struct Violation {
  ViolationCode code;
  Severity severity;
  Term focus;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;  // ordered by code, then focus, then detail
  std::size_t graphSize = 0;

  std::size_t error_count() const;
  std::size_t warning_count() const;
  std::size_t notice_count() const;

  std::string to_json() const;
  std::string to_table() const;
};

/// Runs the BFO role/process checks over a frozen instance graph:
/// role bearers must be independent continuants (an untyped bearer is
/// reported as a warning), roles realized only in processes/occurrents,
/// unreferenced role individuals, continuant/occurrent overlap, declared
/// domain/range conformance, and the informational process-as-resource
/// notice. Problems are report entries, never exceptions.
ValidationReport validate(const Graph& g, const Schema& s);

}  // namespace nfdiforge
