#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoform/graph.hpp"
#include "ontoform/thesaurus.hpp"

namespace ontoform {

// Lowercase, diacritics stripped (NFD minus non-spacing marks), runs of
// whitespace and hyphens collapsed to one space, trimmed.
std::string normalize_label(std::string_view label);

struct ClassMatch {
  std::string left;
  std::string right;
  std::string label;

  friend auto operator<=>(const ClassMatch&, const ClassMatch&) = default;
};

struct Alignment {
  std::vector<ClassMatch> matches;  // sorted by normalized label
  std::set<std::string> left_only;
  std::set<std::string> right_only;
};

struct NameConflict {
  std::string label;
  std::vector<std::string> left;
  std::vector<std::string> right;

  friend bool operator==(const NameConflict&, const NameConflict&) = default;
};

struct ConflictReport {
  std::vector<NameConflict> name_conflicts;
  std::set<SubclassEdge> hierarchy_redundancies;
  // Unmatched right-side classes kept because a surviving definition uses them.
  std::set<std::string> carried_classes;
  // Share of right-side classes backed by a left-side (thesaurus) concept.
  std::optional<double> reef_fraction;

  bool has_conflicts() const { return !name_conflicts.empty() || !hierarchy_redundancies.empty(); }
};

// Matches classes whose normalized labels are equal, 1:1. A label carried by
// two or more classes on one side is a name conflict and matches nothing.
// The report carries name conflicts only.
std::pair<Alignment, ConflictReport> align_by_label(const Graph& left, const Graph& right);

struct MergeResult {
  Graph graph;
  ConflictReport report;
};

// Intersection merge. Matched classes keep the right identifier and record
// the left one with owl:equivalentClass. Subclass edges from both sides
// survive when both endpoints do; the union is transitively reduced and the
// dropped edges are reported. Right-side definitions, labels and the
// datatype/object properties attached to surviving classes are copied as is.
// The report carries redundancies, carried classes and the fraction.
// Throws Error(MalformedAxiom) on undecodable right-side definitions and
// CycleError(CyclicHierarchy) when the combined hierarchy is cyclic.
MergeResult intersect_merge(const Graph& left, const Graph& right, const Alignment& alignment);

std::string report_to_json(const ConflictReport& report);

}  // namespace ontoform
