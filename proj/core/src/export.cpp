#include "ontoform/export.hpp"

#include <algorithm>
#include <sstream>

#include "ontoform/ontology.hpp"
#include "ontoform/turtle.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {

std::string to_rdf(const Session& session) {
  std::string out;
  out += "# ontoform annotations\n";
  out += "# session: " + session.id() + "\n";
  out += "# product: " + session.product() + "\n";
  out += "# ontology-sha256: " + session.ontology()->hash() + "\n\n";
  out += serialize_turtle(session.annotations());
  return out;
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string anchor(const std::string& instance) { return local_name(instance); }

constexpr std::string_view style =
    "body{font-family:sans-serif;max-width:60em;margin:2em auto;padding:0 1em}"
    "table{border-collapse:collapse;margin:.5em 0}"
    "th,td{border:1px solid #999;padding:.25em .6em;text-align:left}"
    "th{background:#eee}.meta{color:#555}";

}  // namespace

std::string to_html(const Session& session) {
  const Graph& g = session.ontology()->graph();
  const std::string product_label = label_of(g, session.product());

  std::map<std::string, std::string> headings;
  for (const auto& a : session.answers())
    headings[a.instance] =
        label_of(g, a.cls) + ": " + a.answer.values.at(std::string(designation_field)).lexical;

  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>" << escape(product_label) << " (" << escape(session.id()) << ")</title>\n"
      << "<style>" << style << "</style>\n</head>\n<body>\n"
      << "<h1>" << escape(product_label) << "</h1>\n"
      << "<p class=\"meta\">Session " << escape(session.id()) << ", "
      << session.answers().size() << " answered, " << session.frontier().size()
      << " pending, ontology " << session.ontology()->hash() << "</p>\n";
  if (session.answers().empty()) out << "<p class=\"empty\">No entries yet.</p>\n";

  for (const auto& a : session.answers()) {
    FormSchema form = build_form(g, a.cls, a.parent.has_value(), a.answer.form_id);
    out << "<section id=\"" << escape(anchor(a.instance)) << "\">\n"
        << "<h2>" << escape(headings.at(a.instance)) << "</h2>\n";

    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& f : form.fields) {
      if (f.id == designation_field) continue;
      auto it = a.answer.values.find(f.id);
      if (it != a.answer.values.end()) rows.emplace_back(f.label, it->second.lexical);
    }
    if (!rows.empty()) {
      out << "<table>\n<tr><th>Champ</th><th>Valeur</th></tr>\n";
      for (const auto& [label, value] : rows)
        out << "<tr><td>" << escape(label) << "</td><td>" << escape(value) << "</td></tr>\n";
      out << "</table>\n";
    }

    std::vector<const AnsweredForm*> children;
    for (const auto& c : session.answers())
      if (c.parent == a.instance) children.push_back(&c);
    if (!children.empty()) {
      out << "<ul class=\"components\">\n";
      for (const auto* c : children)
        out << "<li>" << escape(label_of(g, *c->property)) << ": <a href=\"#"
            << escape(anchor(c->instance)) << "\">" << escape(headings.at(c->instance))
            << "</a></li>\n";
      out << "</ul>\n";
    }
    out << "</section>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

std::vector<AnnotatedInstance> read_annotations(const Graph& annotations, const Graph& ontology) {
  const auto classes = declared_classes(ontology);
  std::map<std::string, AnnotatedInstance> found;
  for (const auto& t : annotations.match(std::nullopt, iri(vocab::rdf::type), std::nullopt)) {
    if (t.subject.is_iri() && t.object.is_iri() && classes.contains(t.object.value()))
      found[t.subject.value()] = AnnotatedInstance{t.subject.value(), t.object.value(), {}, {}};
  }
  for (auto& [node, inst] : found) {
    for (const auto& t : annotations.match(Term::iri(node), std::nullopt, std::nullopt)) {
      if (t.predicate.value() == vocab::rdf::type) continue;
      if (t.object.is_literal()) {
        if (auto dt = datatype_from_iri(t.object.datatype()))
          inst.values[t.predicate.value()] = LiteralValue{t.object.value(), *dt};
      } else if (t.object.is_iri() && found.contains(t.object.value())) {
        inst.links.emplace_back(t.predicate.value(), t.object.value());
      }
    }
    std::sort(inst.links.begin(), inst.links.end());
  }
  std::vector<AnnotatedInstance> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

}  // namespace ontoform
