#pragma once

#include <optional>
#include <string>
#include <variant>

#include "nfdiforge/errors.hpp"

namespace nfdiforge {

/// An absolute IRI. Validation is shallow: non-empty, no whitespace, and a
/// scheme separator must be present.
class Iri {
 public:
  explicit Iri(std::string value);

  const std::string& value() const { return value_; }

  bool operator==(const Iri& other) const { return value_ == other.value_; }
  bool operator!=(const Iri& other) const { return value_ != other.value_; }
  bool operator<(const Iri& other) const { return value_ < other.value_; }

 private:
  std::string value_;
};

class BlankNode {
 public:
  explicit BlankNode(std::string label);

  const std::string& label() const { return label_; }

  bool operator==(const BlankNode& other) const { return label_ == other.label_; }
  bool operator!=(const BlankNode& other) const { return label_ != other.label_; }
  bool operator<(const BlankNode& other) const { return label_ < other.label_; }

 private:
  std::string label_;
};

/// A literal: lexical form plus datatype, with a language tag exactly when
/// the datatype is rdf:langString. Tags are normalized to lowercase.
class Literal {
 public:
  static Literal plain(std::string lexical);                       // xsd:string
  static Literal tagged(std::string lexical, std::string languageTag);
  static Literal typed(std::string lexical, Iri datatype);

  const std::string& lexical() const { return lexical_; }
  const Iri& datatype() const { return datatype_; }
  const std::optional<std::string>& language() const { return language_; }

  bool operator==(const Literal& other) const {
    return lexical_ == other.lexical_ && datatype_ == other.datatype_ &&
           language_ == other.language_;
  }
  bool operator!=(const Literal& other) const { return !(*this == other); }

 private:
  Literal(std::string lexical, Iri datatype, std::optional<std::string> language);

  std::string lexical_;
  Iri datatype_;
  std::optional<std::string> language_;
};

// Variant order doubles as the term-kind rank: IRIs < blank nodes < literals.
using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

/// Canonical N-Triples-style rendering; also the byte-comparison key used
/// for deterministic ordering.
std::string to_ntriples(const Iri& iri);
std::string to_ntriples(const BlankNode& node);
std::string to_ntriples(const Literal& literal);
std::string to_ntriples(const Term& term);

/// Escape a string for inclusion between double quotes in N-Triples/Turtle.
std::string escape_literal(const std::string& raw);

/// Total order: kind rank first, then byte-lexicographic on the canonical
/// serialization within a kind. Returns <0, 0, >0.
int compare_terms(const Term& a, const Term& b);

inline bool term_less(const Term& a, const Term& b) { return compare_terms(a, b) < 0; }

}  // namespace nfdiforge
