#pragma once

#include <string>
#include <string_view>

#include "ontoform/graph.hpp"

namespace ontoform {

// Parses a Turtle subset: @prefix/PREFIX, prefixed names, absolute IRIs,
// `_:x` and `[...]` blanks, `( ... )` collections, quoted literals with
// `^^`/`@`, numeric and boolean shorthand, `a`, `;`/`,` and comments.
// The rdf:, rdfs: and owl: prefixes are bound without a declaration.
// Blank labels are renamed to parser-minted labels in order of appearance.
// Throws ParseError.
Graph parse_turtle(std::string_view text);

// Deterministic pretty-printer: prefix block sorted by prefix, subjects
// sorted by rendered form, `a` first then predicates sorted, objects sorted.
// Singly-referenced blanks are nested as `[ ... ]`, well-formed lists as
// `( ... )`. LF line endings.
std::string serialize_turtle(const Graph& graph);

// Copy of graph whose blanks are relabelled `_b0, _b1, ...` depth-first from
// sorted subjects, so equal-up-to-relabelling graphs compare equal.
Graph canonicalize_blanks(const Graph& graph);

bool equal_modulo_blanks(const Graph& a, const Graph& b);

// Renders an IRI as a prefixed name when some namespace yields a valid local
// part, else as `<iri>`.
std::string render_iri(std::string_view iri, const Graph::Namespaces& namespaces);

// Renders any term in Turtle syntax (blanks as `_:label`).
std::string render_term(const Term& term, const Graph::Namespaces& namespaces);

// Namespaces the serializer always declares (rdf, rdfs, owl, xsd).
const Graph::Namespaces& standard_namespaces();

}  // namespace ontoform
