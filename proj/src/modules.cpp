#include "nfdiforge/modules.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nfdiforge/turtle.hpp"

namespace nfdiforge {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ModuleError(ModuleError::Kind::bad_manifest, "cannot read file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool safe_module_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

ModuleManifest load_manifest(const std::filesystem::path& file) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(file));
  } catch (const nlohmann::json::exception& e) {
    throw ModuleError(ModuleError::Kind::bad_manifest,
                      "manifest " + file.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string() ||
      !doc.contains("graph") || !doc["graph"].is_string()) {
    throw ModuleError(ModuleError::Kind::bad_manifest,
                      "manifest " + file.string() + ": requires string fields 'id' and 'graph'");
  }
  ModuleManifest m;
  m.id = doc["id"].get<std::string>();
  if (!safe_module_id(m.id)) {
    throw ModuleError(ModuleError::Kind::bad_manifest,
                      "manifest " + file.string() + ": module id must match [A-Za-z0-9_-]+");
  }
  m.graphPath = file.parent_path() / doc["graph"].get<std::string>();
  if (doc.contains("imports")) {
    if (!doc["imports"].is_array()) {
      throw ModuleError(ModuleError::Kind::bad_manifest,
                        "manifest " + file.string() + ": 'imports' must be an array");
    }
    for (const auto& entry : doc["imports"]) {
      if (!entry.is_string()) {
        throw ModuleError(ModuleError::Kind::bad_manifest,
                          "manifest " + file.string() + ": import entries must be strings");
      }
      m.imports.push_back(entry.get<std::string>());
    }
  }
  return m;
}

ModuleRegistry ModuleRegistry::from_directory(const std::filesystem::path& dir) {
  ModuleRegistry registry;
  if (!std::filesystem::is_directory(dir)) {
    throw ModuleError(ModuleError::Kind::bad_manifest,
                      "module registry is not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    nlohmann::json probe;
    try {
      probe = nlohmann::json::parse(read_file(file));
    } catch (const nlohmann::json::exception&) {
      continue;  // not manifest-shaped
    }
    if (!probe.is_object() || !probe.contains("id") || !probe.contains("graph")) continue;
    registry.add(load_manifest(file));
  }
  return registry;
}

void ModuleRegistry::add(ModuleManifest manifest) {
  auto [it, inserted] = modules_.emplace(manifest.id, manifest);
  if (!inserted && it->second.graphPath != manifest.graphPath) {
    throw ModuleError(ModuleError::Kind::bad_manifest,
                      "duplicate module id '" + manifest.id + "' in registry");
  }
}

const ModuleManifest* ModuleRegistry::find(const std::string& id) const {
  auto it = modules_.find(id);
  return it == modules_.end() ? nullptr : &it->second;
}

namespace {

class Resolver {
 public:
  explicit Resolver(const ModuleRegistry& registry) : registry_(registry) {}

  Graph run(const ModuleManifest& root) {
    visit(root);
    merged_.freeze();
    return std::move(merged_);
  }

 private:
  const ModuleRegistry& registry_;
  Graph merged_;
  std::set<std::string> loaded_;
  std::vector<std::string> stack_;

  void visit(const ModuleManifest& manifest) {
    if (loaded_.count(manifest.id)) return;
    auto cycleStart = std::find(stack_.begin(), stack_.end(), manifest.id);
    if (cycleStart != stack_.end()) {
      std::string path;
      for (auto it = cycleStart; it != stack_.end(); ++it) path += *it + " -> ";
      throw ModuleError(ModuleError::Kind::import_cycle,
                        "import cycle: " + path + manifest.id);
    }
    stack_.push_back(manifest.id);
    for (const std::string& importId : manifest.imports) {
      const ModuleManifest* imported = registry_.find(importId);
      if (imported == nullptr) {
        throw ModuleError(ModuleError::Kind::unresolved_import,
                          "module '" + manifest.id + "' imports unknown module '" + importId + "'");
      }
      visit(*imported);
    }
    stack_.pop_back();
    merge_graph(manifest);
    loaded_.insert(manifest.id);
  }

  void merge_graph(const ModuleManifest& manifest) {
    std::string text = read_file(manifest.graphPath);
    Dialect dialect = manifest.graphPath.extension() == ".nt" ? Dialect::ntriples : Dialect::turtle;
    Graph g = parse(text, Iri("urn:nfdiforge:module:" + manifest.id), dialect);
    try {
      merged_.prefixes().merge(g.prefixes());
    } catch (const PrefixError& e) {
      throw ModuleError(ModuleError::Kind::prefix_conflict,
                        std::string("module '") + manifest.id + "': " + e.what());
    }
    // Blank nodes are document-scoped: qualify labels with the module id.
    auto qualify = [&](const Term& t) -> Term {
      if (!is_blank(t)) return t;
      return Term(BlankNode(manifest.id + "." + std::get<BlankNode>(t).label()));
    };
    g.for_each([&](const Triple& t) {
      merged_.insert(Triple(qualify(t.subject()), t.predicate(), qualify(t.object())));
    });
  }
};

}  // namespace

Graph resolve_modules(const ModuleManifest& root, const ModuleRegistry& registry) {
  return Resolver(registry).run(root);
}

}  // namespace nfdiforge
