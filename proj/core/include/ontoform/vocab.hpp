#pragma once

#include <string_view>

// Fixed vocabulary identifiers. Everything the engine reads or writes goes
// through these constants.
namespace ontoform::vocab {

namespace rdf {
inline constexpr std::string_view ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view first = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
inline constexpr std::string_view rest = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
inline constexpr std::string_view nil = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
inline constexpr std::string_view lang_string =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}  // namespace rdf

namespace rdfs {
inline constexpr std::string_view ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view sub_class_of = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view label = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view domain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view range = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view klass = "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr std::string_view comment = "http://www.w3.org/2000/01/rdf-schema#comment";
}  // namespace rdfs

namespace owl {
inline constexpr std::string_view ns = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view klass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view intersection_of = "http://www.w3.org/2002/07/owl#intersectionOf";
inline constexpr std::string_view restriction = "http://www.w3.org/2002/07/owl#Restriction";
inline constexpr std::string_view on_property = "http://www.w3.org/2002/07/owl#onProperty";
inline constexpr std::string_view some_values_from = "http://www.w3.org/2002/07/owl#someValuesFrom";
inline constexpr std::string_view equivalent_class = "http://www.w3.org/2002/07/owl#equivalentClass";
inline constexpr std::string_view ontology = "http://www.w3.org/2002/07/owl#Ontology";
inline constexpr std::string_view datatype_property = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view object_property = "http://www.w3.org/2002/07/owl#ObjectProperty";
}  // namespace owl

namespace xsd {
inline constexpr std::string_view ns = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view string = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view decimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view integer = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view boolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view date = "http://www.w3.org/2001/XMLSchema#date";
inline constexpr std::string_view double_ = "http://www.w3.org/2001/XMLSchema#double";
}  // namespace xsd

namespace skos {
inline constexpr std::string_view ns = "http://www.w3.org/2004/02/skos/core#";
inline constexpr std::string_view concept_ = "http://www.w3.org/2004/02/skos/core#Concept";
inline constexpr std::string_view pref_label = "http://www.w3.org/2004/02/skos/core#prefLabel";
inline constexpr std::string_view broader = "http://www.w3.org/2004/02/skos/core#broader";
inline constexpr std::string_view narrower = "http://www.w3.org/2004/02/skos/core#narrower";
}  // namespace skos

// Terms minted by this tool: product-root configuration and the fixed
// annotation fields every form carries.
namespace of {
inline constexpr std::string_view ns = "urn:ontoform:vocab#";
inline constexpr std::string_view product_root = "urn:ontoform:vocab#productRoot";
inline constexpr std::string_view designation = "urn:ontoform:vocab#designation";
inline constexpr std::string_view quantite = "urn:ontoform:vocab#quantite";
}  // namespace of

}  // namespace ontoform::vocab
