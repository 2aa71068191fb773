#pragma once

#include <stdexcept>
#include <string>

namespace nfdiforge {

// Base of every toolkit error. Problems that are data (validation
// violations, failed CQ cases) are report entries, not exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed terms or triples: empty IRI, literal in subject position,
// mutation of a frozen graph.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// CURIE expansion against an unregistered prefix label, or conflicting
// bindings for one label.
class PrefixError : public Error {
 public:
  using Error::Error;
};

// Schema-level extraction problems (e.g. an intersection axiom with
// fewer than two operands).
class SchemaError : public Error {
 public:
  SchemaError(std::string definedClass, const std::string& message)
      : Error(message), definedClass_(std::move(definedClass)) {}
  const std::string& defined_class() const { return definedClass_; }

 private:
  std::string definedClass_;
};

class ModuleError : public Error {
 public:
  enum class Kind { unresolved_import, import_cycle, prefix_conflict, bad_manifest };

  ModuleError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace nfdiforge
