#include "ontoform/axiom.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ontoform/error.hpp"
#include "ontoform/ontology.hpp"
#include "ontoform/thesaurus.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {

std::string_view to_string(Datatype dt) noexcept {
  switch (dt) {
    case Datatype::String: return "string";
    case Datatype::Decimal: return "decimal";
    case Datatype::Integer: return "integer";
    case Datatype::Boolean: return "boolean";
    case Datatype::Date: return "date";
  }
  return "string";
}

std::string_view datatype_iri(Datatype dt) noexcept {
  switch (dt) {
    case Datatype::String: return vocab::xsd::string;
    case Datatype::Decimal: return vocab::xsd::decimal;
    case Datatype::Integer: return vocab::xsd::integer;
    case Datatype::Boolean: return vocab::xsd::boolean;
    case Datatype::Date: return vocab::xsd::date;
  }
  return vocab::xsd::string;
}

std::optional<Datatype> datatype_from_iri(std::string_view iri_value) noexcept {
  for (auto dt : {Datatype::String, Datatype::Decimal, Datatype::Integer, Datatype::Boolean,
                  Datatype::Date})
    if (datatype_iri(dt) == iri_value) return dt;
  return std::nullopt;
}

std::optional<Datatype> datatype_from_name(std::string_view name) noexcept {
  for (auto dt : {Datatype::String, Datatype::Decimal, Datatype::Integer, Datatype::Boolean,
                  Datatype::Date})
    if (to_string(dt) == name) return dt;
  return std::nullopt;
}

namespace {

[[noreturn]] void malformed(std::string_view cls, const std::string& why) {
  throw Error(ErrorCode::MalformedAxiom, "malformed axiom for <" + std::string(cls) + ">: " + why);
}

void require_class(const Graph& graph, std::string_view cls) {
  bool declared = false;
  try {
    declared = is_declared_class(graph, cls);
  } catch (const Error&) {
    declared = false;
  }
  if (!declared) throw Error(ErrorCode::UnknownClass, "unknown class: " + std::string(cls));
}

Restriction decode_restriction(const Graph& graph, std::string_view cls, const Term& node) {
  if (node.is_literal()) malformed(cls, "intersection member is a literal");
  auto props = graph.objects(node, iri(vocab::owl::on_property));
  auto fillers = graph.objects(node, iri(vocab::owl::some_values_from));
  if (props.size() != 1)
    malformed(cls, "restriction " + node.to_string() + " has " + std::to_string(props.size()) +
                       " owl:onProperty");
  if (fillers.size() != 1)
    malformed(cls, "restriction " + node.to_string() + " has " + std::to_string(fillers.size()) +
                       " owl:someValuesFrom");
  if (!props.front().is_iri() || !fillers.front().is_iri())
    malformed(cls, "restriction " + node.to_string() + " must name its property and filler");
  return {props.front().value(), fillers.front().value()};
}

}  // namespace

ClassAxiom read_axiom(const Graph& graph, std::string_view cls) {
  require_class(graph, cls);
  ClassAxiom axiom;
  axiom.cls = std::string(cls);
  const Term node = Term::iri(cls);
  const Term intersection = iri(vocab::owl::intersection_of);

  for (const auto& super : graph.objects(node, iri(vocab::rdfs::sub_class_of))) {
    if (super.is_iri()) {
      axiom.named_superclasses.push_back(super.value());
      continue;
    }
    if (super.is_literal()) malformed(cls, "literal superclass");
    auto lists = graph.objects(super, intersection);
    if (lists.empty()) malformed(cls, "anonymous superclass without owl:intersectionOf");
    if (lists.size() > 1) malformed(cls, "anonymous superclass with several owl:intersectionOf");
    if (axiom.definition) malformed(cls, "more than one anonymous definition");

    std::vector<Term> members;
    try {
      members = list_members(graph, lists.front());
    } catch (const Error& e) {
      malformed(cls, e.what());
    }
    std::vector<Restriction> restrictions;
    restrictions.reserve(members.size());
    for (const auto& m : members) restrictions.push_back(decode_restriction(graph, cls, m));
    axiom.definition = std::move(restrictions);
    axiom.definition_node = super;
  }
  return axiom;
}

ConceptKind classify_concept(const Graph& graph, std::string_view cls) {
  return read_axiom(graph, cls).definition ? ConceptKind::Defined : ConceptKind::Primitive;
}

std::vector<Restriction> components_of(const Graph& graph, std::string_view cls) {
  auto axiom = read_axiom(graph, cls);
  if (!axiom.definition) return {};
  return *axiom.definition;
}

namespace {

// Datatype of a property's range, nullopt for object properties.
std::optional<Datatype> property_datatype(const Graph& graph, const Term& prop) {
  const Term type = iri(vocab::rdf::type);
  bool declared_datatype = graph.contains({prop, type, iri(vocab::owl::datatype_property)});
  auto ranges = graph.objects(prop, iri(vocab::rdfs::range));
  if (ranges.empty()) {
    if (declared_datatype) return Datatype::String;
    return std::nullopt;
  }
  const auto& r = ranges.front();
  if (!r.is_iri()) return std::nullopt;
  auto dt = datatype_from_iri(r.value());
  if (dt) return dt;
  bool xsd_range = r.value().rfind(vocab::xsd::ns, 0) == 0;
  if (declared_datatype || xsd_range)
    throw Error(ErrorCode::MalformedAxiom,
                "unsupported datatype range " + r.value() + " for property " + prop.value());
  return std::nullopt;
}

}  // namespace

std::vector<PropertySpec> properties_of(const Graph& graph, std::string_view cls) {
  require_class(graph, cls);
  std::vector<std::string> scope{std::string(cls)};
  for (auto& a : ancestors(graph, cls)) scope.push_back(a);

  std::map<std::string, PropertySpec> found;
  const Term domain = iri(vocab::rdfs::domain);
  for (const auto& d : scope) {
    for (const auto& prop : graph.subjects(domain, Term::iri(d))) {
      if (!prop.is_iri() || found.contains(prop.value())) continue;
      auto dt = property_datatype(graph, prop);
      if (!dt) continue;
      found.emplace(prop.value(), PropertySpec{prop.value(), label_of(graph, prop.value()), d, *dt});
    }
  }
  std::vector<PropertySpec> out;
  for (auto& [k, spec] : found) out.push_back(std::move(spec));
  std::sort(out.begin(), out.end(), [](const PropertySpec& a, const PropertySpec& b) {
    return std::tie(a.label, a.property) < std::tie(b.label, b.property);
  });
  return out;
}

void validate_ontology(const Graph& graph) {
  auto classes = declared_classes(graph);
  std::set<SubclassEdge> edges;
  for (const auto& cls : classes) {
    auto axiom = read_axiom(graph, cls);
    for (const auto& super : axiom.named_superclasses) edges.emplace(cls, super);
    if (!axiom.definition) continue;
    for (const auto& r : *axiom.definition) {
      if (!classes.contains(r.filler))
        malformed(cls, "restriction filler <" + r.filler + "> is not a declared class");
    }
  }
  auto cycle = find_cycle(classes, edges);
  if (!cycle.empty()) throw CycleError(ErrorCode::CyclicHierarchy, std::move(cycle));

  const Term domain = iri(vocab::rdfs::domain);
  for (const auto& t : graph.match(std::nullopt, domain, std::nullopt))
    if (t.subject.is_iri()) property_datatype(graph, t.subject);
}

}  // namespace ontoform
