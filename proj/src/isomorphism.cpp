#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nfdiforge/graph.hpp"

namespace nfdiforge {
namespace {

bool mentions_blank(const Triple& t) {
  return is_blank(t.subject()) || is_blank(t.object());
}

// Structural fingerprint of a blank node: every incident triple with this
// node marked, other blank nodes wildcarded.
std::multiset<std::string> signature(const std::string& label, const std::vector<Triple>& triples) {
  std::multiset<std::string> sig;
  auto render = [&](const Term& t) -> std::string {
    if (is_blank(t)) {
      return std::get<BlankNode>(t).label() == label ? "<self>" : "<bn>";
    }
    return to_ntriples(t);
  };
  for (const Triple& t : triples) {
    bool hit = (is_blank(t.subject()) && std::get<BlankNode>(t.subject()).label() == label) ||
               (is_blank(t.object()) && std::get<BlankNode>(t.object()).label() == label);
    if (!hit) continue;
    sig.insert(render(t.subject()) + " " + t.predicate().value() + " " + render(t.object()));
  }
  return sig;
}

Triple rename(const Triple& t, const std::map<std::string, std::string>& mapping) {
  auto sub = [&](const Term& term) -> Term {
    if (!is_blank(term)) return term;
    return Term(BlankNode(mapping.at(std::get<BlankNode>(term).label())));
  };
  return Triple(sub(t.subject()), t.predicate(), sub(t.object()));
}

bool assign(std::size_t i, const std::vector<std::string>& aLabels,
            const std::vector<std::vector<std::string>>& candidates,
            std::map<std::string, std::string>& mapping, std::set<std::string>& used,
            const std::vector<Triple>& aBlankTriples, const std::set<Triple>& bBlankSet) {
  if (i == aLabels.size()) {
    for (const Triple& t : aBlankTriples) {
      if (!bBlankSet.count(rename(t, mapping))) return false;
    }
    return true;
  }
  const std::string& label = aLabels[i];
  for (const std::string& candidate : candidates[i]) {
    if (used.count(candidate)) continue;
    mapping[label] = candidate;
    used.insert(candidate);
    if (assign(i + 1, aLabels, candidates, mapping, used, aBlankTriples, bBlankSet)) return true;
    mapping.erase(label);
    used.erase(candidate);
  }
  return false;
}

}  // namespace

bool graph_isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;

  std::vector<Triple> aAll, bAll;
  a.for_each([&](const Triple& t) { aAll.push_back(t); });
  b.for_each([&](const Triple& t) { bAll.push_back(t); });

  std::set<Triple> aGround, bGround;
  std::vector<Triple> aBlank, bBlank;
  for (const Triple& t : aAll) (mentions_blank(t) ? aBlank.push_back(t) : void(aGround.insert(t)));
  for (const Triple& t : bAll) (mentions_blank(t) ? bBlank.push_back(t) : void(bGround.insert(t)));
  if (aGround != bGround || aBlank.size() != bBlank.size()) return false;
  if (aBlank.empty()) return true;

  auto labels_of = [](const std::vector<Triple>& triples) {
    std::set<std::string> labels;
    for (const Triple& t : triples) {
      if (is_blank(t.subject())) labels.insert(std::get<BlankNode>(t.subject()).label());
      if (is_blank(t.object())) labels.insert(std::get<BlankNode>(t.object()).label());
    }
    return labels;
  };
  std::set<std::string> aLabelSet = labels_of(aBlank);
  std::set<std::string> bLabelSet = labels_of(bBlank);
  if (aLabelSet.size() != bLabelSet.size()) return false;

  std::vector<std::string> aLabels(aLabelSet.begin(), aLabelSet.end());
  std::map<std::string, std::multiset<std::string>> bSigs;
  for (const std::string& bl : bLabelSet) bSigs[bl] = signature(bl, bBlank);

  std::vector<std::vector<std::string>> candidates;
  for (const std::string& al : aLabels) {
    auto sig = signature(al, aBlank);
    std::vector<std::string> cands;
    for (const auto& [bl, bsig] : bSigs) {
      if (bsig == sig) cands.push_back(bl);
    }
    if (cands.empty()) return false;
    candidates.push_back(std::move(cands));
  }

  // Most-constrained first keeps the backtracking shallow.
  std::vector<std::size_t> order(aLabels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return candidates[x].size() < candidates[y].size();
  });
  std::vector<std::string> orderedLabels;
  std::vector<std::vector<std::string>> orderedCands;
  for (std::size_t i : order) {
    orderedLabels.push_back(aLabels[i]);
    orderedCands.push_back(candidates[i]);
  }

  std::set<Triple> bBlankSet(bBlank.begin(), bBlank.end());
  std::map<std::string, std::string> mapping;
  std::set<std::string> used;
  return assign(0, orderedLabels, orderedCands, mapping, used, aBlank, bBlankSet);
}

}  // namespace nfdiforge
