#include "ontoform/ontology.hpp"

#include "ontoform/error.hpp"
#include "ontoform/turtle.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {

std::set<std::string> declared_classes(const Graph& graph) {
  std::set<std::string> out;
  const Term type = iri(vocab::rdf::type);
  for (auto klass : {vocab::owl::klass, vocab::rdfs::klass}) {
    for (const auto& s : graph.subjects(type, iri(klass)))
      if (s.is_iri()) out.insert(s.value());
  }
  return out;
}

bool is_declared_class(const Graph& graph, std::string_view cls) {
  if (cls.empty()) return false;
  Term node = Term::iri(cls);
  const Term type = iri(vocab::rdf::type);
  return graph.contains({node, type, iri(vocab::owl::klass)}) ||
         graph.contains({node, type, iri(vocab::rdfs::klass)});
}

std::string local_name(std::string_view iri_value) {
  auto cut = iri_value.find_last_of("#/:");
  if (cut == std::string_view::npos || cut + 1 == iri_value.size()) return std::string(iri_value);
  return std::string(iri_value.substr(cut + 1));
}

std::string label_of(const Graph& graph, std::string_view node) {
  for (const auto& l : graph.objects(Term::iri(node), iri(vocab::rdfs::label)))
    if (l.is_literal()) return l.value();
  return local_name(node);
}

std::vector<std::string> named_superclasses(const Graph& graph, std::string_view cls) {
  std::vector<std::string> out;
  for (const auto& o : graph.objects(Term::iri(cls), iri(vocab::rdfs::sub_class_of)))
    if (o.is_iri()) out.push_back(o.value());
  return out;
}

std::set<std::string> ancestors(const Graph& graph, std::string_view cls) {
  std::set<std::string> seen;
  std::vector<std::string> stack{std::string(cls)};
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (auto& super : named_superclasses(graph, c))
      if (seen.insert(super).second) stack.push_back(super);
  }
  seen.erase(std::string(cls));
  return seen;
}

std::set<std::string> descendants(const Graph& graph, std::string_view cls) {
  std::set<std::string> seen;
  std::vector<std::string> stack{std::string(cls)};
  const Term sub = iri(vocab::rdfs::sub_class_of);
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (const auto& s : graph.subjects(sub, Term::iri(c)))
      if (s.is_iri() && seen.insert(s.value()).second) stack.push_back(s.value());
  }
  seen.erase(std::string(cls));
  return seen;
}

std::string resolve_class(const Graph& graph, std::string_view text) {
  const std::string t(text);
  auto unknown = [&](const std::string& why) {
    return Error(ErrorCode::UnknownClass, "unknown class: " + t + why);
  };
  auto declared = [&](const std::string& candidate) {
    try {
      return is_declared_class(graph, candidate);
    } catch (const Error&) {
      return false;
    }
  };
  if (declared(t)) return t;

  auto colon = t.find(':');
  if (colon != std::string::npos) {
    auto prefix = t.substr(0, colon);
    std::string base;
    if (auto it = graph.namespaces().find(prefix); it != graph.namespaces().end())
      base = it->second;
    else if (auto jt = standard_namespaces().find(prefix); jt != standard_namespaces().end())
      base = jt->second;
    if (!base.empty() && declared(base + t.substr(colon + 1)))
      return base + t.substr(colon + 1);
    throw unknown("");
  }
  std::vector<std::string> hits;
  for (const auto& cls : declared_classes(graph))
    if (local_name(cls) == t) hits.push_back(cls);
  if (hits.size() == 1) return hits.front();
  if (hits.empty()) throw unknown("");
  throw unknown(" (ambiguous local name)");
}

}  // namespace ontoform
