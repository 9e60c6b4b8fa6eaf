#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoform/graph.hpp"

namespace ontoform {

struct LabelledConcept {
  std::string label;
  std::string language;

  friend bool operator==(const LabelledConcept&, const LabelledConcept&) = default;
};

// Pairs are always (narrower/sub, broader/super).
using SubclassEdge = std::pair<std::string, std::string>;

// A thesaurus: concepts keyed by IRI plus the raw hierarchical links as they
// were asserted. `broader` holds `X broader Y` as (X, Y); `narrower` holds
// `Y narrower X` already flipped to (X, Y).
struct ConceptScheme {
  std::map<std::string, LabelledConcept> concepts;
  std::set<SubclassEdge> broader;
  std::set<SubclassEdge> narrower;

  void add_concept(std::string id, std::string label, std::string language = {});
  void add_broader(std::string narrower_id, std::string broader_id);
  void add_narrower(std::string broader_id, std::string narrower_id);
};

struct Hierarchy {
  std::map<std::string, LabelledConcept> classes;
  std::set<SubclassEdge> edges;

  friend bool operator==(const Hierarchy&, const Hierarchy&) = default;
};

// Reads skos:Concept / prefLabel / broader / narrower statements.
ConceptScheme scheme_from_graph(const Graph& graph);

// Three-column CSV `id,label,broader_id` (RFC 4180 quoting, optional header
// row, empty broader for roots, repeated id rows for multiple broader terms).
// Ids that are not absolute IRIs are appended to base.
ConceptScheme scheme_from_csv(std::string_view text, std::string_view base);

// One class per concept, one edge per broader link and per inverted narrower
// link. Throws Error(InvalidInput) on scheme invariant violations and
// CycleError(CyclicHierarchy) on cycles.
Hierarchy extract_hierarchy(const ConceptScheme& scheme);

// Unique minimal edge set with the same transitive closure.
// Throws CycleError(CyclicHierarchy) on cyclic input.
Hierarchy transitive_reduction(const Hierarchy& h);

// The cycle found by a depth-first search in sorted order, or empty when acyclic.
std::vector<std::string> find_cycle(const std::set<std::string>& nodes,
                                    const std::set<SubclassEdge>& edges);

// owl:Class + rdfs:label per class, rdfs:subClassOf per edge.
Graph hierarchy_to_graph(const Hierarchy& h);

}  // namespace ontoform
