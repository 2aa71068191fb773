#include "nfdiforge/graph.hpp"

#include <algorithm>
#include <numeric>

namespace nfdiforge {

Triple::Triple(Term subject, Iri predicate, Term object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
  if (is_literal(subject_)) {
    throw StructuralError("literal in subject position: " + to_ntriples(subject_));
  }
}

bool Triple::operator==(const Triple& other) const {
  return compare_spo(*this, other) == 0;
}

bool Triple::operator<(const Triple& other) const {
  return compare_spo(*this, other) < 0;
}

int compare_spo(const Triple& a, const Triple& b) {
  if (int c = compare_terms(a.subject(), b.subject())) return c;
  if (int c = a.predicate().value().compare(b.predicate().value())) return c;
  return compare_terms(a.object(), b.object());
}

int compare_pos(const Triple& a, const Triple& b) {
  if (int c = a.predicate().value().compare(b.predicate().value())) return c;
  if (int c = compare_terms(a.object(), b.object())) return c;
  return compare_terms(a.subject(), b.subject());
}

int compare_osp(const Triple& a, const Triple& b) {
  if (int c = compare_terms(a.object(), b.object())) return c;
  if (int c = compare_terms(a.subject(), b.subject())) return c;
  return a.predicate().value().compare(b.predicate().value());
}

void PrefixMap::bind(const std::string& label, Iri namespaceIri) {
  entries_.insert_or_assign(label, std::move(namespaceIri));
}

Iri PrefixMap::expand(const std::string& curie) const {
  auto colon = curie.find(':');
  if (colon == std::string::npos) {
    throw PrefixError("not a CURIE (missing ':'): '" + curie + "'");
  }
  std::string label = curie.substr(0, colon);
  auto it = entries_.find(label);
  if (it == entries_.end()) {
    throw PrefixError("unresolved prefix '" + label + ":' in '" + curie + "'");
  }
  return Iri(it->second.value() + curie.substr(colon + 1));
}

namespace {

// Conservative PN_LOCAL shape so compacted names survive re-parsing.
bool safe_local_name(const std::string& local) {
  if (local.empty()) return true;
  for (std::size_t i = 0; i < local.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(local[i]);
    bool word = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                c == '_' || c >= 0x80;
    bool mid = c == '-' || c == '.';
    if (i == 0 ? !word : !(word || mid)) return false;
  }
  return local.back() != '.';
}

}  // namespace

std::optional<std::string> PrefixMap::compact(const Iri& iri) const {
  const std::string& value = iri.value();
  const std::string* bestLabel = nullptr;
  std::size_t bestLength = 0;
  for (const auto& [label, ns] : entries_) {
    const std::string& nsv = ns.value();
    if (nsv.size() > value.size() || value.compare(0, nsv.size(), nsv) != 0) continue;
    if (bestLabel == nullptr || nsv.size() > bestLength) {
      bestLabel = &label;
      bestLength = nsv.size();
    }
  }
  if (bestLabel == nullptr) return std::nullopt;
  std::string local = value.substr(bestLength);
  if (!safe_local_name(local)) return std::nullopt;
  return *bestLabel + ":" + local;
}

void PrefixMap::merge(const PrefixMap& other) {
  for (const auto& [label, ns] : other.entries_) {
    auto it = entries_.find(label);
    if (it != entries_.end() && it->second != ns) {
      throw PrefixError("prefix '" + label + ":' bound to both <" + it->second.value() +
                        "> and <" + ns.value() + ">");
    }
  }
  for (const auto& [label, ns] : other.entries_) entries_.emplace(label, ns);
}

void PrefixMap::merge_lenient(const PrefixMap& other) {
  for (const auto& [label, ns] : other.entries_) entries_.emplace(label, ns);
}

bool Graph::insert(Triple t) {
  if (frozen_) throw StructuralError("insert on a frozen graph");
  return loading_.insert(std::move(t)).second;
}

void Graph::freeze() {
  if (frozen_) return;
  triples_.assign(loading_.begin(), loading_.end());  // SPO order
  loading_.clear();
  pos_.resize(triples_.size());
  osp_.resize(triples_.size());
  std::iota(pos_.begin(), pos_.end(), 0);
  std::iota(osp_.begin(), osp_.end(), 0);
  std::sort(pos_.begin(), pos_.end(), [this](std::uint32_t a, std::uint32_t b) {
    return compare_pos(triples_[a], triples_[b]) < 0;
  });
  std::sort(osp_.begin(), osp_.end(), [this](std::uint32_t a, std::uint32_t b) {
    return compare_osp(triples_[a], triples_[b]) < 0;
  });
  frozen_ = true;
}

std::size_t Graph::size() const { return frozen_ ? triples_.size() : loading_.size(); }

bool Graph::contains(const Triple& t) const {
  if (!frozen_) return loading_.count(t) > 0;
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

void Graph::for_each(const std::function<void(const Triple&)>& fn) const {
  if (frozen_) {
    for (const Triple& t : triples_) fn(t);
  } else {
    for (const Triple& t : loading_) fn(t);
  }
}

void Graph::require_frozen() const {
  if (!frozen_) throw StructuralError("pattern matching requires a frozen graph");
}

namespace {

// -1 key before triple, 0 within prefix, +1 after. `nullopt` positions are
// wildcards that never discriminate.
struct PrefixKey {
  const std::optional<Term>* first;
  const std::optional<Term>* second;
  const std::optional<Term>* third;
};

int compare_key_position(const std::optional<Term>& key, const Term& value) {
  if (!key) return 0;
  return compare_terms(*key, value);
}

}  // namespace

void Graph::scan(const std::optional<Term>& s, const std::optional<Iri>& p,
                 const std::optional<Term>& o,
                 const std::function<void(const Triple&)>& fn) const {
  require_frozen();
  std::optional<Term> pt;
  if (p) pt = Term(*p);

  auto matches = [&](const Triple& t) {
    if (s && compare_terms(*s, t.subject()) != 0) return false;
    if (p && !(t.predicate() == *p)) return false;
    if (o && compare_terms(*o, t.object()) != 0) return false;
    return true;
  };

  if (s) {
    // SPO index: seek (s) or (s, p); remaining bound positions filter.
    auto cmp = [&](const Triple& t) {
      if (int c = compare_key_position(s, t.subject())) return c;
      return compare_key_position(pt, Term(t.predicate()));
    };
    auto lo = std::partition_point(triples_.begin(), triples_.end(),
                                   [&](const Triple& t) { return cmp(t) > 0; });
    for (auto it = lo; it != triples_.end() && cmp(*it) == 0; ++it) {
      if (matches(*it)) fn(*it);
    }
    return;
  }

  const std::vector<std::uint32_t>* index = nullptr;
  std::function<int(const Triple&)> cmp;
  if (p) {
    index = &pos_;
    cmp = [&](const Triple& t) {
      if (int c = compare_key_position(pt, Term(t.predicate()))) return c;
      return compare_key_position(o, t.object());
    };
  } else if (o) {
    index = &osp_;
    cmp = [&](const Triple& t) { return compare_key_position(o, t.object()); };
  } else {
    for (const Triple& t : triples_) fn(t);
    return;
  }

  auto lo = std::partition_point(index->begin(), index->end(), [&](std::uint32_t id) {
    return cmp(triples_[id]) > 0;
  });
  // Ids are positions in the SPO-sorted store, so sorting them restores
  // canonical output order.
  std::vector<std::uint32_t> hits;
  for (auto it = lo; it != index->end() && cmp(triples_[*it]) == 0; ++it) {
    if (matches(triples_[*it])) hits.push_back(*it);
  }
  std::sort(hits.begin(), hits.end());
  for (std::uint32_t id : hits) fn(triples_[id]);
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Iri>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  scan(s, p, o, [&](const Triple& t) { out.push_back(t); });
  return out;
}

std::size_t Graph::count_estimate(const std::optional<Term>& s, const std::optional<Iri>& p,
                                  const std::optional<Term>& o) const {
  require_frozen();
  if (!s && !p && !o) return triples_.size();
  std::size_t n = 0;
  scan(s, p, o, [&](const Triple&) { ++n; });
  return n;
}

}  // namespace nfdiforge
