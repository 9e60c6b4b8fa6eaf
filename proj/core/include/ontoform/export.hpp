#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ontoform/graph.hpp"
#include "ontoform/session.hpp"

namespace ontoform {

// Canonical Turtle of the annotation graph behind a comment header naming
// the session, the product and the ontology hash.
std::string to_rdf(const Session& session);

// Self-contained HTML report, one section per answered form in submission order.
std::string to_html(const Session& session);

// One instance as read back from an annotation graph.
struct AnnotatedInstance {
  std::string instance;
  std::string cls;
  std::map<std::string, LiteralValue> values;            // keyed by property IRI
  std::vector<std::pair<std::string, std::string>> links;  // (property, child instance)

  friend bool operator==(const AnnotatedInstance&, const AnnotatedInstance&) = default;
};

// Instances typed by a class of the ontology, sorted by IRI. Literal values
// whose datatype is not a form datatype are skipped. Links are sorted.
std::vector<AnnotatedInstance> read_annotations(const Graph& annotations, const Graph& ontology);

}  // namespace ontoform
