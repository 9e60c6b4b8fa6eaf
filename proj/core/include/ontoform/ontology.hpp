#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontoform/graph.hpp"

namespace ontoform {

// IRIs typed owl:Class or rdfs:Class, sorted.
std::set<std::string> declared_classes(const Graph& graph);
bool is_declared_class(const Graph& graph, std::string_view cls);

// rdfs:label of node (smallest when several), else the IRI's local name.
std::string label_of(const Graph& graph, std::string_view node);

// Text after the last '#', '/' or ':'.
std::string local_name(std::string_view iri_value);

// Named (IRI) objects of rdfs:subClassOf, in graph order.
std::vector<std::string> named_superclasses(const Graph& graph, std::string_view cls);

// Transitive named superclasses, excluding cls itself; cycle-safe.
std::set<std::string> ancestors(const Graph& graph, std::string_view cls);

// Transitive named subclasses, excluding cls itself; cycle-safe.
std::set<std::string> descendants(const Graph& graph, std::string_view cls);

// Resolves an absolute IRI, a prefixed name over the graph's namespaces, or
// a local name unique among declared classes. Throws Error(UnknownClass).
std::string resolve_class(const Graph& graph, std::string_view text);

}  // namespace ontoform
