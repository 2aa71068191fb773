#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nfdiforge/graph.hpp"

namespace nfdiforge {

/// One ontology module: an id, the graph file it contributes, and the
/// modules it imports. See docs/manifest.md for the JSON schema.
struct ModuleManifest {
  std::string id;
  std::filesystem::path graphPath;
  std::vector<std::string> imports;
};

/// Loads a manifest file; `graph` is resolved relative to the manifest's
/// directory. Throws ModuleError (bad_manifest) on malformed input.
ModuleManifest load_manifest(const std::filesystem::path& file);

/// Local directory of modules keyed by id; no network dereferencing.
class ModuleRegistry {
 public:
  /// Indexes every manifest-shaped *.json in `dir` (files without the
  /// id/graph fields are skipped).
  static ModuleRegistry from_directory(const std::filesystem::path& dir);

  void add(ModuleManifest manifest);
  const ModuleManifest* find(const std::string& id) const;
  std::size_t size() const { return modules_.size(); }

 private:
  std::map<std::string, ModuleManifest> modules_;
};

/// Union of all transitively imported module graphs, each module loaded
/// exactly once (diamond imports deduplicate), prefix maps merged with
/// conflict detection, blank nodes kept module-scoped. Returns a frozen
/// graph. Throws ModuleError for missing modules, import cycles, and
/// prefix conflicts.
Graph resolve_modules(const ModuleManifest& root, const ModuleRegistry& registry);

}  // namespace nfdiforge
