#include "ontoform/graph.hpp"

#include <algorithm>
#include <tuple>

#include "ontoform/error.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

bool has_scheme(std::string_view v) {
  auto colon = v.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!alpha(v[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = v[i];
    if (!(alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.')) return false;
  }
  return true;
}

std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Term Term::iri(std::string_view value) {
  if (value.empty()) throw Error(ErrorCode::InvalidInput, "empty IRI");
  for (char c : value) {
    if (is_space(c) || c == '<' || c == '>' || c == '"')
      throw Error(ErrorCode::InvalidInput, "invalid character in IRI: " + std::string(value));
  }
  if (!has_scheme(value))
    throw Error(ErrorCode::InvalidInput, "IRI is not absolute: " + std::string(value));
  return Term(TermKind::Iri, std::string(value), {}, {});
}

Term Term::blank(std::string_view label) {
  if (label.empty()) throw Error(ErrorCode::InvalidInput, "empty blank node label");
  for (char c : label) {
    if (is_space(c)) throw Error(ErrorCode::InvalidInput, "whitespace in blank node label");
  }
  return Term(TermKind::Blank, std::string(label), {}, {});
}

Term Term::literal(std::string_view lexical, std::string_view datatype,
                   std::string_view language) {
  if (!language.empty())
    return Term(TermKind::Literal, std::string(lexical), std::string(vocab::rdf::lang_string),
                std::string(language));
  // Validates the datatype as an identifier.
  auto dt = Term::iri(datatype.empty() ? vocab::xsd::string : datatype);
  return Term(TermKind::Literal, std::string(lexical), dt.value(), {});
}

Term Term::string_literal(std::string_view lexical) {
  return Term(TermKind::Literal, std::string(lexical), std::string(vocab::xsd::string), {});
}

std::string Term::to_string() const {
  switch (kind_) {
    case TermKind::Iri: return "<" + value_ + ">";
    case TermKind::Blank: return "_:" + value_;
    case TermKind::Literal: {
      std::string out = "\"" + escape_string(value_) + "\"";
      if (!language_.empty()) return out + "@" + language_;
      if (datatype_ == vocab::xsd::string) return out;
      return out + "^^<" + datatype_ + ">";
    }
  }
  return {};
}

void check_triple(const Triple& t) {
  if (t.subject.is_literal())
    throw Error(ErrorCode::InvalidTriple,
                "literal in subject position: " + t.subject.to_string());
  if (!t.predicate.is_iri())
    throw Error(ErrorCode::InvalidTriple,
                "predicate must be an identifier: " + t.predicate.to_string());
}

bool Graph::PosLess::operator()(const Triple& a, const Triple& b) const {
  return std::tie(a.predicate, a.object, a.subject) < std::tie(b.predicate, b.object, b.subject);
}

bool Graph::OspLess::operator()(const Triple& a, const Triple& b) const {
  return std::tie(a.object, a.subject, a.predicate) < std::tie(b.object, b.subject, b.predicate);
}

bool Graph::insert(const Triple& t) {
  check_triple(t);
  if (!spo_.insert(t).second) return false;
  pos_.insert(t);
  osp_.insert(t);
  if (t.subject.is_blank()) blank_labels_.insert(t.subject.value());
  if (t.object.is_blank()) blank_labels_.insert(t.object.value());
  return true;
}

bool Graph::erase(const Triple& t) {
  if (spo_.erase(t) == 0) return false;
  pos_.erase(t);
  osp_.erase(t);
  return true;
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto keep = [&](const Triple& t) {
    return (!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  const Term low = Term::lowest();
  if (s) {
    Triple key{*s, p ? *p : low, (p && o) ? *o : low};
    for (auto it = spo_.lower_bound(key); it != spo_.end() && it->subject == *s; ++it) {
      if (p && it->predicate != *p) break;
      if (keep(*it)) out.push_back(*it);
    }
    return out;
  }
  if (p) {
    Triple key{low, *p, o ? *o : low};
    for (auto it = pos_.lower_bound(key); it != pos_.end() && it->predicate == *p; ++it) {
      if (o && it->object != *o) break;
      out.push_back(*it);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  if (o) {
    Triple key{low, low, *o};
    for (auto it = osp_.lower_bound(key); it != osp_.end() && it->object == *o; ++it)
      out.push_back(*it);
    std::sort(out.begin(), out.end());
    return out;
  }
  return {spo_.begin(), spo_.end()};
}

std::vector<Term> Graph::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  for (auto& t : match(s, p, std::nullopt)) out.push_back(t.object);
  return out;
}

std::vector<Term> Graph::subjects(const Term& p, const Term& o) const {
  std::vector<Term> out;
  for (auto& t : match(std::nullopt, p, o)) out.push_back(t.subject);
  return out;
}

std::optional<Term> Graph::object(const Term& s, const Term& p) const {
  auto objs = objects(s, p);
  if (objs.empty()) return std::nullopt;
  return objs.front();
}

Term Graph::fresh_blank() {
  for (;;) {
    std::string label = "b" + std::to_string(next_blank_++);
    if (blank_labels_.insert(label).second) return Term::blank(label);
  }
}

void Graph::merge(const Graph& other) {
  std::map<std::string, Term> renamed;
  auto map_term = [&](const Term& t) -> Term {
    if (!t.is_blank()) return t;
    auto it = renamed.find(t.value());
    if (it != renamed.end()) return it->second;
    Term fresh = fresh_blank();
    renamed.emplace(t.value(), fresh);
    return fresh;
  };
  for (const auto& t : other.statements())
    insert(Triple{map_term(t.subject), t.predicate, map_term(t.object)});
  for (const auto& [prefix, base] : other.namespaces()) namespaces_.emplace(prefix, base);
}

void Graph::set_namespace(std::string prefix, std::string base) {
  namespaces_[std::move(prefix)] = std::move(base);
}

void Graph::set_namespaces(const Namespaces& ns) {
  for (const auto& [prefix, base] : ns) namespaces_[prefix] = base;
}

std::vector<Term> list_members(const Graph& graph, const Term& head) {
  const Term first = iri(vocab::rdf::first);
  const Term rest = iri(vocab::rdf::rest);
  const Term nil = iri(vocab::rdf::nil);

  std::vector<Term> members;
  std::set<Term> seen;
  Term cell = head;
  while (cell != nil) {
    if (cell.is_literal())
      throw Error(ErrorCode::MalformedList, "list cell is a literal: " + cell.to_string());
    if (!seen.insert(cell).second)
      throw Error(ErrorCode::MalformedList, "list cycles back to " + cell.to_string());
    auto firsts = graph.objects(cell, first);
    auto rests = graph.objects(cell, rest);
    if (firsts.size() != 1)
      throw Error(ErrorCode::MalformedList, "list cell " + cell.to_string() + " has " +
                                                std::to_string(firsts.size()) + " rdf:first");
    if (rests.size() != 1)
      throw Error(ErrorCode::MalformedList, "list cell " + cell.to_string() + " has " +
                                                std::to_string(rests.size()) + " rdf:rest");
    members.push_back(firsts.front());
    cell = rests.front();
  }
  return members;
}

Term make_list(Graph& graph, const std::vector<Term>& items) {
  Term next = iri(vocab::rdf::nil);
  const Term first = iri(vocab::rdf::first);
  const Term rest = iri(vocab::rdf::rest);
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    Term cell = graph.fresh_blank();
    graph.insert(cell, first, *it);
    graph.insert(cell, rest, next);
    next = cell;
  }
  return next;
}

}  // namespace ontoform
