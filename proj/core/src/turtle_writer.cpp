#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ontoform/turtle.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }

bool valid_local(std::string_view local) {
  if (local.empty()) return true;
  auto ok_first = [](char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == ':' || is_high(c); };
  auto ok_rest = [](char c) {
    return is_alpha(c) || is_digit(c) || c == '_' || c == ':' || c == '-' || c == '.' || is_high(c);
  };
  if (!ok_first(local.front()) || local.back() == '.') return false;
  return std::all_of(local.begin() + 1, local.end(), ok_rest);
}

std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

Graph::Namespaces effective_namespaces(const Graph& graph) {
  Graph::Namespaces ns = standard_namespaces();
  for (const auto& [prefix, base] : graph.namespaces()) ns[prefix] = base;
  return ns;
}

class Writer {
 public:
  explicit Writer(const Graph& graph) : graph_(graph), ns_(effective_namespaces(graph)) {
    plan();
  }

  std::string run() {
    std::string out;
    for (const auto& [prefix, base] : ns_) out += "@prefix " + prefix + ": <" + base + "> .\n";

    std::vector<std::pair<std::string, Term>> subjects;
    for (const auto& s : top_level_) subjects.emplace_back(render_term(s, ns_), s);
    std::sort(subjects.begin(), subjects.end());

    for (const auto& [rendered, subject] : subjects) {
      out += "\n";
      out += rendered;
      out += predicate_list(subject, 0, " ");
      out += " .\n";
    }
    return out;
  }

 private:
  // Decides which blanks are nested inline and which lists render as ( ... ).
  void plan() {
    const Term first = iri(vocab::rdf::first);
    const Term rest = iri(vocab::rdf::rest);
    const Term nil = iri(vocab::rdf::nil);

    std::set<Term> subjects;
    for (const auto& t : graph_.statements()) {
      subjects.insert(t.subject);
      if (t.object.is_blank()) {
        ++refs_[t.object];
        referrer_.insert_or_assign(t.object, t);
      }
    }

    auto is_cell = [&](const Term& b) {
      auto all = graph_.match(b, std::nullopt, std::nullopt);
      return all.size() == 2 && all[0].predicate == first && all[1].predicate == rest;
    };

    std::set<Term> disabled_heads;
    std::set<Term> forced_top;
    for (;;) {
      lists_.clear();
      std::set<Term> consumed;
      for (const auto& b : subjects) {
        if (!b.is_blank() || disabled_heads.contains(b) || forced_top.contains(b)) continue;
        if (!is_cell(b) || refs_[b] != 1) continue;
        const auto& ref = referrer_.at(b);
        if (ref.predicate == rest && ref.subject.is_blank() && is_cell(ref.subject)) continue;
        std::vector<Term> members;
        std::vector<Term> cells;
        std::set<Term> seen;
        Term cell = b;
        bool ok = true;
        while (cell != nil) {
          if (!cell.is_blank() || !is_cell(cell) || !seen.insert(cell).second ||
              forced_top.contains(cell) || (cell != b && refs_[cell] != 1)) {
            ok = false;
            break;
          }
          members.push_back(*graph_.object(cell, first));
          cells.push_back(cell);
          cell = *graph_.object(cell, rest);
        }
        if (!ok) continue;
        lists_[b] = members;
        for (std::size_t i = 1; i < cells.size(); ++i) consumed.insert(cells[i]);
      }

      top_level_.clear();
      inline_.clear();
      for (const auto& s : subjects) {
        if (s.is_blank() && refs_[s] == 1 && !forced_top.contains(s)) {
          inline_.insert(s);
        } else if (!consumed.contains(s)) {
          top_level_.insert(s);
        }
      }

      std::set<Term> reached;
      std::vector<Term> stack(top_level_.begin(), top_level_.end());
      while (!stack.empty()) {
        Term node = stack.back();
        stack.pop_back();
        auto visit = [&](const Term& o) {
          if (o.is_blank() && inline_.contains(o) && reached.insert(o).second) stack.push_back(o);
        };
        auto list = lists_.find(node);
        if (list != lists_.end() && !top_level_.contains(node)) {
          Term cell = node;
          while (cell != nil) {
            reached.insert(cell);
            visit(*graph_.object(cell, first));
            cell = *graph_.object(cell, rest);
          }
          continue;
        }
        for (const auto& t : graph_.match(node, std::nullopt, std::nullopt)) visit(t.object);
      }

      std::vector<Term> unreached;
      for (const auto& b : inline_)
        if (!reached.contains(b)) unreached.push_back(b);
      if (unreached.empty()) break;

      // Blank cycles with no external anchor: promote one node to a subject.
      auto pick = std::find_if(unreached.begin(), unreached.end(), [&](const Term& b) {
        return !lists_.contains(b) && !consumed.contains(b);
      });
      if (pick != unreached.end()) {
        forced_top.insert(*pick);
      } else {
        auto head = std::find_if(unreached.begin(), unreached.end(),
                                 [&](const Term& b) { return lists_.contains(b); });
        if (head != unreached.end()) {
          disabled_heads.insert(*head);
          forced_top.insert(*head);
        } else {
          forced_top.insert(unreached.front());
        }
      }
    }
  }

  std::string render_predicate(const Term& p) const {
    if (p.value() == vocab::rdf::type) return "a";
    return render_iri(p.value(), ns_);
  }

  // " p o1 , o2 ;\n    q o3" continuation after the subject or '['.
  std::string predicate_list(const Term& subject, std::size_t indent, const std::string& lead) {
    std::map<Term, std::vector<Term>> by_predicate;
    for (const auto& t : graph_.match(subject, std::nullopt, std::nullopt))
      by_predicate[t.predicate].push_back(t.object);

    std::vector<std::pair<std::string, const std::vector<Term>*>> preds;
    for (const auto& [p, objs] : by_predicate) {
      std::string r = render_predicate(p);
      // `a` sorts first.
      preds.emplace_back(r == "a" ? std::string(1, '\0') : r, &objs);
    }
    std::sort(preds.begin(), preds.end());

    std::string out;
    const std::string pad(indent + 4, ' ');
    bool first_pred = true;
    for (const auto& [key, objs] : preds) {
      std::vector<std::string> rendered;
      for (const auto& o : *objs) rendered.push_back(render_object(o, indent + 4));
      std::sort(rendered.begin(), rendered.end());
      std::string joined;
      for (std::size_t i = 0; i < rendered.size(); ++i) {
        if (i) joined += " , ";
        joined += rendered[i];
      }
      std::string name = key[0] == '\0' ? std::string("a") : key;
      if (first_pred) {
        out += lead;
        first_pred = false;
      } else {
        out += " ;\n" + pad;
      }
      out += name + " " + joined;
    }
    return out;
  }

  std::string render_object(const Term& o, std::size_t indent) {
    if (o.is_blank() && refs_[o] == 1 && graph_.match(o, std::nullopt, std::nullopt).empty())
      return "[]";
    if (!o.is_blank() || !inline_.contains(o)) return render_term(o, ns_);
    const std::string pad(indent, ' ');
    auto list = lists_.find(o);
    if (list != lists_.end()) {
      std::vector<std::string> items;
      bool nested = false;
      for (const auto& m : list->second) {
        items.push_back(render_object(m, indent + 4));
        if (m.is_blank() && inline_.contains(m)) nested = true;
      }
      std::string out = "(";
      if (!nested) {
        for (const auto& item : items) out += " " + item;
        return out + " )";
      }
      for (const auto& item : items) out += "\n" + pad + "    " + item;
      return out + "\n" + pad + ")";
    }
    return "[" + predicate_list(o, indent, "\n" + pad + "    ") + "\n" + pad + "]";
  }

  const Graph& graph_;
  Graph::Namespaces ns_;
  std::map<Term, std::size_t> refs_;
  std::map<Term, Triple> referrer_;
  std::map<Term, std::vector<Term>> lists_;
  std::set<Term> inline_;
  std::set<Term> top_level_;
};

// Structural fingerprint of a blank's neighbourhood, ignoring blank labels.
std::string blank_signature(const Graph& g, const Term& b, int depth, std::set<Term>& path) {
  if (depth == 0 || path.contains(b)) return "_";
  path.insert(b);
  std::vector<std::string> parts;
  for (const auto& t : g.match(b, std::nullopt, std::nullopt)) {
    std::string o = t.object.is_blank() ? "[" + blank_signature(g, t.object, depth - 1, path) + "]"
                                        : t.object.to_string();
    parts.push_back(t.predicate.to_string() + " " + o);
  }
  path.erase(b);
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

}  // namespace

const Graph::Namespaces& standard_namespaces() {
  static const Graph::Namespaces ns = {
      {"owl", std::string(vocab::owl::ns)},
      {"rdf", std::string(vocab::rdf::ns)},
      {"rdfs", std::string(vocab::rdfs::ns)},
      {"xsd", std::string(vocab::xsd::ns)},
  };
  return ns;
}

std::string render_iri(std::string_view iri_value, const Graph::Namespaces& namespaces) {
  const std::string* best_prefix = nullptr;
  std::size_t best_len = 0;
  for (const auto& [prefix, base] : namespaces) {
    if (base.empty() || base.size() < best_len || iri_value.substr(0, base.size()) != base)
      continue;
    if (!valid_local(iri_value.substr(base.size()))) continue;
    if (base.size() > best_len) {
      best_prefix = &prefix;
      best_len = base.size();
    }
  }
  if (best_prefix) return *best_prefix + ":" + std::string(iri_value.substr(best_len));
  return "<" + std::string(iri_value) + ">";
}

std::string render_term(const Term& term, const Graph::Namespaces& namespaces) {
  switch (term.kind()) {
    case TermKind::Iri: return render_iri(term.value(), namespaces);
    case TermKind::Blank: return "_:" + term.value();
    case TermKind::Literal: {
      std::string out = "\"" + escape_literal(term.value()) + "\"";
      if (!term.language().empty()) return out + "@" + term.language();
      if (term.datatype() == vocab::xsd::string) return out;
      return out + "^^" + render_iri(term.datatype(), namespaces);
    }
  }
  return {};
}

std::string serialize_turtle(const Graph& graph) { return Writer(graph).run(); }

Graph canonicalize_blanks(const Graph& graph) {
  std::map<Term, Term> relabel;
  std::size_t counter = 0;

  auto key_of = [&](const Term& o) -> std::string {
    if (!o.is_blank()) return o.to_string();
    auto it = relabel.find(o);
    if (it != relabel.end()) return "_:" + it->second.value();
    std::set<Term> path;
    return "~" + blank_signature(graph, o, 4, path);
  };

  // Depth-first: label a blank, then descend into its objects in (p, key) order.
  auto visit = [&](auto&& self, const Term& node) -> void {
    auto triples = graph.match(node, std::nullopt, std::nullopt);
    std::vector<std::pair<std::string, Term>> order;
    for (const auto& t : triples)
      if (t.object.is_blank()) order.emplace_back(t.predicate.to_string() + " " + key_of(t.object), t.object);
    std::sort(order.begin(), order.end());
    for (const auto& [key, o] : order) {
      if (relabel.contains(o)) continue;
      relabel.emplace(o, Term::blank("_b" + std::to_string(counter++)));
      self(self, o);
    }
  };

  std::set<Term> roots;
  std::set<Term> blank_subjects;
  for (const auto& t : graph.statements()) {
    if (t.subject.is_blank()) blank_subjects.insert(t.subject);
    else roots.insert(t.subject);
  }
  for (const auto& r : roots) visit(visit, r);

  for (;;) {
    std::vector<std::pair<std::string, Term>> pending;
    for (const auto& b : blank_subjects) {
      if (relabel.contains(b)) continue;
      std::set<Term> path;
      pending.emplace_back(blank_signature(graph, b, 4, path), b);
    }
    if (pending.empty()) break;
    std::sort(pending.begin(), pending.end());
    const Term& b = pending.front().second;
    relabel.emplace(b, Term::blank("_b" + std::to_string(counter++)));
    visit(visit, b);
  }

  Graph out;
  out.set_namespaces(graph.namespaces());
  auto map = [&](const Term& t) { return t.is_blank() ? relabel.at(t) : t; };
  for (const auto& t : graph.statements()) out.insert(Triple{map(t.subject), t.predicate, map(t.object)});
  return out;
}

bool equal_modulo_blanks(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  return canonicalize_blanks(a) == canonicalize_blanks(b);
}

}  // namespace ontoform
