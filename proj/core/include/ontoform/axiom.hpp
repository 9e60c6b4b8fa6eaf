#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoform/graph.hpp"

namespace ontoform {

struct Restriction {
  std::string property;
  std::string filler;

  friend auto operator<=>(const Restriction&, const Restriction&) = default;
};

// A class with its named superclasses and, when defined, the ordered
// restrictions of its single anonymous intersection superclass:
//   C ⊑ B1 ⊓ ... ⊓ (∃p1.F1 ⊓ ∃p2.F2 ⊓ ...)
struct ClassAxiom {
  std::string cls;
  std::vector<std::string> named_superclasses;
  std::optional<std::vector<Restriction>> definition;
  // The anonymous class node carrying owl:intersectionOf, when defined.
  std::optional<Term> definition_node;
};

enum class ConceptKind { Defined, Primitive };

enum class Datatype { String, Decimal, Integer, Boolean, Date };

std::string_view to_string(Datatype dt) noexcept;
std::string_view datatype_iri(Datatype dt) noexcept;
std::optional<Datatype> datatype_from_iri(std::string_view iri_value) noexcept;
std::optional<Datatype> datatype_from_name(std::string_view name) noexcept;

struct PropertySpec {
  std::string property;
  std::string label;
  std::string domain;
  Datatype datatype = Datatype::String;

  friend bool operator==(const PropertySpec&, const PropertySpec&) = default;
};

// Throws Error(UnknownClass) or Error(MalformedAxiom).
ClassAxiom read_axiom(const Graph& graph, std::string_view cls);

ConceptKind classify_concept(const Graph& graph, std::string_view cls);

// (onProperty, someValuesFrom) pairs of the direct definition in collection
// order; empty for primitive classes. Inherited definitions are not read.
std::vector<Restriction> components_of(const Graph& graph, std::string_view cls);

// Datatype properties whose domain is cls or one of its named ancestors,
// deduplicated and sorted by label.
std::vector<PropertySpec> properties_of(const Graph& graph, std::string_view cls);

// Load-time checks: every class axiom decodes, every restriction filler is a
// declared class, datatype property ranges are supported, and the named
// hierarchy is acyclic.
void validate_ontology(const Graph& graph);

}  // namespace ontoform
