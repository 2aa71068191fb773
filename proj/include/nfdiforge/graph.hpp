#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nfdiforge/term.hpp"

namespace nfdiforge {

/// One RDF triple. The subject is an IRI or blank node (a literal subject
/// is a structural error), the predicate is always an IRI.
class Triple {
 public:
  Triple(Term subject, Iri predicate, Term object);

  const Term& subject() const { return subject_; }
  const Iri& predicate() const { return predicate_; }
  const Term& object() const { return object_; }

  bool operator==(const Triple& other) const;
  bool operator!=(const Triple& other) const { return !(*this == other); }
  /// Canonical subject-predicate-object order.
  bool operator<(const Triple& other) const;

 private:
  Term subject_;
  Iri predicate_;
  Term object_;
};

int compare_spo(const Triple& a, const Triple& b);
int compare_pos(const Triple& a, const Triple& b);
int compare_osp(const Triple& a, const Triple& b);

/// Prefix label -> namespace IRI map with CURIE expansion and longest-match
/// compaction.
class PrefixMap {
 public:
  /// Binds a label, replacing any previous binding.
  void bind(const std::string& label, Iri namespaceIri);

  const std::map<std::string, Iri>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Expands "label:local" using the registered namespaces.
  /// Throws PrefixError for a missing ':' or an unregistered label.
  Iri expand(const std::string& curie) const;

  /// Longest-namespace compaction to "label:local"; nullopt when no
  /// namespace matches or the local part would not survive re-parsing.
  std::optional<std::string> compact(const Iri& iri) const;

  /// Merge with conflict detection: one label bound to two different
  /// namespaces throws PrefixError.
  void merge(const PrefixMap& other);
  /// Merge keeping existing bindings on conflict (serialization aid).
  void merge_lenient(const PrefixMap& other);

 private:
  std::map<std::string, Iri> entries_;
};

/// Triple-indexed graph store. Mutation happens during the load phase;
/// freeze() builds the subject/predicate/object-first indexes and makes the
/// graph immutable and safely shareable across readers.
class Graph {
 public:
  Graph() = default;

  /// Inserts during the load phase. Returns true iff the triple was new.
  /// Throws StructuralError when the graph is already frozen.
  bool insert(Triple t);

  void freeze();
  bool frozen() const { return frozen_; }

  std::size_t size() const;
  bool contains(const Triple& t) const;

  /// Visits every triple in canonical order (works in both phases).
  void for_each(const std::function<void(const Triple&)>& fn) const;

  /// Streams the triples matching all bound positions, in canonical
  /// triple order. Seeks the index whose bound prefix is most selective
  /// for the pattern shape. Requires a frozen graph.
  void scan(const std::optional<Term>& s, const std::optional<Iri>& p,
            const std::optional<Term>& o,
            const std::function<void(const Triple&)>& fn) const;

  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Iri>& p,
                            const std::optional<Term>& o) const;

  /// Upper-bound match count for the bound prefix; used by join planners.
  std::size_t count_estimate(const std::optional<Term>& s, const std::optional<Iri>& p,
                             const std::optional<Term>& o) const;

  PrefixMap& prefixes() { return prefixes_; }
  const PrefixMap& prefixes() const { return prefixes_; }

  // Index cardinalities; all agree with size() once frozen.
  std::size_t index_size_spo() const { return triples_.size(); }
  std::size_t index_size_pos() const { return pos_.size(); }
  std::size_t index_size_osp() const { return osp_.size(); }

 private:
  void require_frozen() const;

  std::set<Triple> loading_;        // load-phase store, SPO order
  std::vector<Triple> triples_;     // frozen store, SPO order
  std::vector<std::uint32_t> pos_;  // frozen permutations of triples_
  std::vector<std::uint32_t> osp_;
  PrefixMap prefixes_;
  bool frozen_ = false;
};

/// Graph isomorphism with blank-node bijection (ground triples must match
/// exactly). Intended for round-trip checks on desk-scale graphs.
bool graph_isomorphic(const Graph& a, const Graph& b);

}  // namespace nfdiforge
