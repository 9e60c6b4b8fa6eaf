#include "ontoform/thesaurus.hpp"

#include <algorithm>
#include <vector>

#include "ontoform/error.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {

namespace {

std::string trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

bool is_absolute(std::string_view id) {
  auto colon = id.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  return std::all_of(id.begin(), id.begin() + static_cast<std::ptrdiff_t>(colon), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '+' || c == '-' || c == '.';
  });
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
      ++line;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted)
    throw Error(ErrorCode::InvalidInput, "CSV: unterminated quoted field at line " +
                                             std::to_string(line));
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void ConceptScheme::add_concept(std::string id, std::string label, std::string language) {
  concepts[std::move(id)] = LabelledConcept{std::move(label), std::move(language)};
}

void ConceptScheme::add_broader(std::string narrower_id, std::string broader_id) {
  broader.emplace(std::move(narrower_id), std::move(broader_id));
}

void ConceptScheme::add_narrower(std::string broader_id, std::string narrower_id) {
  narrower.emplace(std::move(narrower_id), std::move(broader_id));
}

ConceptScheme scheme_from_graph(const Graph& graph) {
  ConceptScheme scheme;
  const Term type = iri(vocab::rdf::type);
  const Term pref = iri(vocab::skos::pref_label);
  for (const auto& c : graph.subjects(type, iri(vocab::skos::concept_))) {
    if (!c.is_iri()) throw Error(ErrorCode::InvalidInput, "concept must be an IRI: " + c.to_string());
    auto labels = graph.objects(c, pref);
    // Deterministic choice when several prefLabels exist: the smallest term.
    LabelledConcept lc;
    if (!labels.empty() && labels.front().is_literal()) {
      lc.label = labels.front().value();
      lc.language = labels.front().language();
    }
    scheme.concepts[c.value()] = lc;
  }
  for (const auto& t : graph.match(std::nullopt, iri(vocab::skos::broader), std::nullopt)) {
    if (!t.subject.is_iri() || !t.object.is_iri())
      throw Error(ErrorCode::InvalidInput, "skos:broader between non-IRI nodes");
    scheme.add_broader(t.subject.value(), t.object.value());
  }
  for (const auto& t : graph.match(std::nullopt, iri(vocab::skos::narrower), std::nullopt)) {
    if (!t.subject.is_iri() || !t.object.is_iri())
      throw Error(ErrorCode::InvalidInput, "skos:narrower between non-IRI nodes");
    scheme.add_narrower(t.subject.value(), t.object.value());
  }
  return scheme;
}

ConceptScheme scheme_from_csv(std::string_view text, std::string_view base) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  auto rows = parse_csv(text);
  ConceptScheme scheme;
  auto to_iri = [&](const std::string& id) {
    return is_absolute(id) ? id : std::string(base) + id;
  };
  std::vector<std::pair<std::string, std::string>> links;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    if (i == 0 && row.size() == 3 && trim(row[0]) == "id" && trim(row[1]) == "label" &&
        trim(row[2]) == "broader_id")
      continue;
    if (row.size() != 3)
      throw Error(ErrorCode::InvalidInput, "CSV row " + std::to_string(i + 1) + ": expected 3 columns, got " +
                                               std::to_string(row.size()));
    std::string id = trim(row[0]);
    if (id.empty()) throw Error(ErrorCode::InvalidInput, "CSV row " + std::to_string(i + 1) + ": empty id");
    std::string full = to_iri(id);
    auto label = trim(row[1]);
    auto existing = scheme.concepts.find(full);
    if (existing != scheme.concepts.end() && existing->second.label != label)
      throw Error(ErrorCode::InvalidInput, "CSV row " + std::to_string(i + 1) +
                                               ": conflicting labels for " + id);
    scheme.concepts[full] = LabelledConcept{label, {}};
    std::string broader = trim(row[2]);
    if (!broader.empty()) links.emplace_back(full, to_iri(broader));
  }
  for (auto& [n, b] : links) scheme.add_broader(n, b);
  return scheme;
}

std::vector<std::string> find_cycle(const std::set<std::string>& nodes,
                                    const std::set<SubclassEdge>& edges) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [sub, super] : edges) out[sub].push_back(super);

  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> mark;
  std::vector<std::string> path;
  std::vector<std::string> cycle;

  auto dfs = [&](auto&& self, const std::string& n) -> bool {
    mark[n] = Mark::Grey;
    path.push_back(n);
    for (const auto& next : out[n]) {
      auto m = mark[next];
      if (m == Mark::Grey) {
        auto it = std::find(path.begin(), path.end(), next);
        cycle.assign(it, path.end());
        cycle.push_back(next);
        return true;
      }
      if (m == Mark::White && self(self, next)) return true;
    }
    path.pop_back();
    mark[n] = Mark::Black;
    return false;
  };

  std::set<std::string> all = nodes;
  for (const auto& [a, b] : edges) {
    all.insert(a);
    all.insert(b);
  }
  for (const auto& n : all) {
    if (mark[n] == Mark::White && dfs(dfs, n)) return cycle;
  }
  return {};
}

Hierarchy extract_hierarchy(const ConceptScheme& scheme) {
  Hierarchy h;
  for (const auto& [id, concept_] : scheme.concepts) {
    if (trim(concept_.label).empty())
      throw Error(ErrorCode::InvalidInput, "concept without a label: " + id);
    h.classes.emplace(id, concept_);
  }
  auto add = [&](const SubclassEdge& e, const char* relation) {
    for (const auto* end : {&e.first, &e.second}) {
      if (!scheme.concepts.contains(*end))
        throw Error(ErrorCode::InvalidInput,
                    std::string(relation) + " link to undeclared concept: " + *end);
    }
    h.edges.insert(e);
  };
  for (const auto& e : scheme.broader) add(e, "broader");
  for (const auto& e : scheme.narrower) add(e, "narrower");

  std::set<std::string> nodes;
  for (const auto& [id, c] : h.classes) nodes.insert(id);
  auto cycle = find_cycle(nodes, h.edges);
  if (!cycle.empty()) throw CycleError(ErrorCode::CyclicHierarchy, std::move(cycle));
  return h;
}

Hierarchy transitive_reduction(const Hierarchy& h) {
  std::set<std::string> nodes;
  for (const auto& [id, c] : h.classes) nodes.insert(id);
  for (const auto& [a, b] : h.edges) {
    nodes.insert(a);
    nodes.insert(b);
  }
  auto cycle = find_cycle(nodes, h.edges);
  if (!cycle.empty()) throw CycleError(ErrorCode::CyclicHierarchy, std::move(cycle));

  std::vector<std::string> ids(nodes.begin(), nodes.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
  const std::size_t n = ids.size();

  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [a, b] : h.edges) {
    succ[index[a]].push_back(index[b]);
    ++indegree[index[b]];
  }

  // Kahn order, then descendants are accumulated in reverse topological order.
  std::vector<std::size_t> order;
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    auto u = ready.back();
    ready.pop_back();
    order.push_back(u);
    for (auto v : succ[u])
      if (--indegree[v] == 0) ready.push_back(v);
  }

  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto u = *it;
    for (auto v : succ[u]) {
      reach[u][v] = true;
      for (std::size_t w = 0; w < n; ++w)
        if (reach[v][w]) reach[u][w] = true;
    }
  }

  Hierarchy out;
  out.classes = h.classes;
  for (const auto& [a, b] : h.edges) {
    auto u = index[a];
    auto v = index[b];
    bool redundant = std::any_of(succ[u].begin(), succ[u].end(),
                                 [&](std::size_t w) { return w != v && reach[w][v]; });
    if (!redundant) out.edges.emplace(a, b);
  }
  return out;
}

Graph hierarchy_to_graph(const Hierarchy& h) {
  Graph g;
  const Term type = iri(vocab::rdf::type);
  const Term klass = iri(vocab::owl::klass);
  const Term label = iri(vocab::rdfs::label);
  const Term sub = iri(vocab::rdfs::sub_class_of);
  for (const auto& [id, c] : h.classes) {
    Term node = iri(id);
    g.insert(node, type, klass);
    g.insert(node, label, c.language.empty() ? Term::string_literal(c.label)
                                             : Term::literal(c.label, {}, c.language));
  }
  for (const auto& [a, b] : h.edges) g.insert(iri(a), sub, iri(b));
  return g;
}

}  // namespace ontoform
