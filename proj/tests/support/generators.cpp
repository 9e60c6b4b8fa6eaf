#include "generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace ontoform::testing {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::string escape_turtle(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Hierarchy random_dag(Rng& rng, int max_nodes, double density) {
  Hierarchy h;
  int n = uniform(rng, 0, max_nodes);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("urn:test:dag#n" + std::to_string(i));
  for (const auto& name : names) h.classes[name] = LabelledConcept{name.substr(13), {}};
  std::shuffle(names.begin(), names.end(), rng);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (chance(rng, density)) h.edges.emplace(names[i], names[j]);
  return h;
}

std::set<SubclassEdge> closure(const Hierarchy& h) {
  std::vector<std::string> nodes;
  for (const auto& [k, v] : h.classes) nodes.push_back(k);
  const std::size_t n = nodes.size();
  auto index = [&](const std::string& s) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), s) - nodes.begin());
  };
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : h.edges) reach[index(a)][index(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  std::set<SubclassEdge> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (reach[i][j]) out.emplace(nodes[i], nodes[j]);
  return out;
}

std::set<SubclassEdge> brute_force_reduction(const Hierarchy& h) {
  const auto target = closure(h);
  Hierarchy work = h;
  for (const auto& e : h.edges) {
    Hierarchy without = work;
    without.edges.erase(e);
    if (closure(without) == target) work = std::move(without);
  }
  return work.edges;
}

std::string ModelOntology::turtle() const {
  std::ostringstream out;
  out << "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\n";
  out << "<urn:test:model> a owl:Ontology ; <urn:ontoform:vocab#productRoot> <" << root << "> .\n\n";
  for (const auto& [iri, c] : classes) {
    out << "<" << iri << "> a owl:Class ;\n    rdfs:label \"" << escape_turtle(c.label) << "\"";
    for (const auto& s : c.supers) out << " ;\n    rdfs:subClassOf <" << s << ">";
    if (!c.restrictions.empty()) {
      out << " ;\n    rdfs:subClassOf [ a owl:Class ; owl:intersectionOf (";
      for (const auto& [p, f] : c.restrictions)
        out << "\n        [ a owl:Restriction ; owl:onProperty <" << p << "> ; owl:someValuesFrom <"
            << f << "> ]";
      out << "\n    ) ]";
    }
    out << " .\n";
  }
  std::set<std::string> object_properties;
  for (const auto& [iri, c] : classes)
    for (const auto& [p, f] : c.restrictions) object_properties.insert(p);
  for (const auto& p : object_properties) out << "<" << p << "> a owl:ObjectProperty .\n";
  for (const auto& p : properties)
    out << "<" << p.iri << "> a owl:DatatypeProperty ; rdfs:label \"" << escape_turtle(p.label)
        << "\" ; rdfs:domain <" << p.domain << "> ; rdfs:range <" << datatype_iri(p.datatype)
        << "> .\n";
  return out.str();
}

std::size_t ModelOntology::tree_size(const std::string& cls) const {
  std::size_t n = 1;
  for (const auto& [p, f] : classes.at(cls).restrictions) n += tree_size(f);
  return n;
}

std::vector<ModelProperty> ModelOntology::properties_for(const std::string& cls) const {
  std::set<std::string> scope{cls};
  std::vector<std::string> stack{cls};
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (const auto& s : classes.at(c).supers)
      if (scope.insert(s).second) stack.push_back(s);
  }
  std::vector<ModelProperty> out;
  for (const auto& p : properties)
    if (scope.contains(p.domain)) out.push_back(p);
  return out;
}

ModelOntology random_model(Rng& rng, int max_defined, int max_restrictions,
                           std::size_t max_tree) {
  const std::string ns = "urn:test:m#";
  const std::vector<std::string> links{ns + "hasPart", ns + "hasElement"};
  const std::vector<Datatype> datatypes{Datatype::String, Datatype::Decimal, Datatype::Integer,
                                        Datatype::Boolean, Datatype::Date};
  for (;;) {
    ModelOntology m;
    m.root = ns + "Root";
    m.classes[m.root] = {m.root, "racine", {}, {}};
    const std::string part = ns + "Part";
    m.classes[part] = {part, "pièce", {}, {}};

    int nd = uniform(rng, 1, max_defined);
    int np = uniform(rng, 1, 6);
    std::vector<std::string> defined, primitive;
    for (int i = 0; i < nd; ++i) defined.push_back(ns + "D" + std::to_string(i));
    for (int i = 0; i < np; ++i) primitive.push_back(ns + "P" + std::to_string(i));
    m.product = defined.front();

    for (int i = 0; i < nd; ++i) {
      ModelClass c{defined[i], "défini " + std::to_string(i), {}, {}};
      c.supers.push_back(i == 0 ? m.root : (chance(rng, 0.5) ? part : defined[uniform(rng, 0, i - 1)]));
      std::vector<std::string> fillers(defined.begin() + i + 1, defined.end());
      fillers.insert(fillers.end(), primitive.begin(), primitive.end());
      int k = uniform(rng, 1, max_restrictions);
      for (int r = 0; r < k; ++r) c.restrictions.emplace_back(pick(rng, links), pick(rng, fillers));
      m.classes[c.iri] = c;
    }
    for (int i = 0; i < np; ++i) {
      ModelClass c{primitive[i], "primitif " + std::to_string(i), {}, {}};
      if (chance(rng, 0.6)) c.supers.push_back(part);
      m.classes[c.iri] = c;
    }

    std::vector<std::string> all;
    for (const auto& [iri, c] : m.classes) all.push_back(iri);
    int nprops = uniform(rng, 0, 5);
    for (int i = 0; i < nprops; ++i)
      m.properties.push_back({ns + "p" + std::to_string(i), "propriété " + std::to_string(i),
                              pick(rng, all), pick(rng, datatypes)});

    // Memoized size with saturation, so exponential draws are cheap to reject.
    std::map<std::string, std::size_t> memo;
    std::function<std::size_t(const std::string&)> size = [&](const std::string& c) {
      if (auto it = memo.find(c); it != memo.end()) return it->second;
      std::size_t n = 1;
      for (const auto& [p, f] : m.classes.at(c).restrictions) n = std::min(n + size(f), max_tree + 1);
      return memo[c] = n;
    };
    if (size(m.product) <= max_tree) return m;
  }
}

std::string random_lexical(Rng& rng, Datatype dt) {
  switch (dt) {
    case Datatype::String: {
      static const std::vector<std::string> words{
          "alu", "Solaire SA", "verre \"trempé\"", "ligne\nsuivante", "back\\slash",
          "é à ç ü", "  espacé  ", "#hash; comma, dot."};
      return pick(rng, words);
    }
    case Datatype::Decimal: {
      std::string s = std::to_string(uniform(rng, -500, 5000));
      if (chance(rng, 0.6)) s += "." + std::to_string(uniform(rng, 0, 99));
      return s;
    }
    case Datatype::Integer: return std::to_string(uniform(rng, -1000, 100000));
    case Datatype::Boolean: return chance(rng, 0.5) ? "true" : "false";
    case Datatype::Date: {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", uniform(rng, 1990, 2030), uniform(rng, 1, 12),
                    uniform(rng, 1, 28));
      return buf;
    }
  }
  return {};
}

nlohmann::json oracle_script(const ModelOntology& m, Rng& rng, const std::string& session_tag) {
  nlohmann::json script = nlohmann::json::array();
  std::vector<std::string> queue{m.product};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto& cls = queue[head];
    nlohmann::json values;
    values["designation"] = session_tag + " #" + std::to_string(head + 1);
    if (head > 0 && chance(rng, 0.3)) values["quantite"] = uniform(rng, 1, 100);
    for (const auto& p : m.properties_for(cls))
      if (chance(rng, 0.5)) values[p.iri.substr(p.iri.find('#') + 1)] = random_lexical(rng, p.datatype);
    script.push_back({{"concept", cls}, {"values", values}});
    for (const auto& [p, f] : m.classes.at(cls).restrictions) queue.push_back(f);
  }
  return script;
}

namespace {

const std::vector<std::string> tokens{"cadre",  "verre",   "cable",    "cellule",  "film",
                                      "joint",  "etancheite", "module", "diode",   "boite",
                                      "profile", "vitrage", "air",      "polymere", "onduleur"};

std::string perturb_char(Rng& rng, char c) {
  static const std::map<char, std::vector<std::string>> variants{
      {'a', {"a", "A", "à", "â", "À"}},      {'c', {"c", "C", "ç", "Ç"}},
      {'e', {"e", "E", "é", "è", "ê", "É"}}, {'i', {"i", "I", "î", "ï"}},
      {'o', {"o", "O", "ô", "Ô"}},           {'u', {"u", "U", "ù", "û"}},
  };
  if (auto it = variants.find(c); it != variants.end()) return pick(rng, it->second);
  if (chance(rng, 0.3)) return std::string(1, static_cast<char>(c - 'a' + 'A'));
  return std::string(1, c);
}

}  // namespace

LabelledOntology random_labelled(Rng& rng, const std::string& ns, int max_classes,
                                 bool with_definitions) {
  static const std::vector<std::string> separators{" ", "  ", "-", " - ", "–", " -- "};
  LabelledOntology out;
  std::ostringstream ttl;
  int n = uniform(rng, 1, max_classes);
  std::vector<std::string> iris;
  std::vector<std::string> canon;
  for (int i = 0; i < n; ++i) {
    std::string label;
    if (!canon.empty() && chance(rng, 0.08)) {
      label = pick(rng, canon);
    } else {
      label = pick(rng, tokens);
      if (chance(rng, 0.5)) label += " " + pick(rng, tokens);
    }
    canon.push_back(label);
    std::string iri = ns + "c" + std::to_string(i);
    iris.push_back(iri);
    out.canonical[iri] = label;

    std::string spelled = chance(rng, 0.2) ? " " : "";
    for (char c : label) spelled += c == ' ' ? pick(rng, separators) : perturb_char(rng, c);
    if (chance(rng, 0.2)) spelled += "  ";
    ttl << "<" << iri << "> a owl:Class ; rdfs:label \"" << escape_turtle(spelled) << "\" .\n";
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (chance(rng, 0.15)) ttl << "<" << iris[i] << "> rdfs:subClassOf <" << iris[j] << "> .\n";
  if (with_definitions && n > 1) {
    for (int i = 0; i < n; ++i) {
      if (!chance(rng, 0.3)) continue;
      ttl << "<" << iris[i] << "> rdfs:subClassOf [ a owl:Class ; owl:intersectionOf (";
      int k = uniform(rng, 1, 3);
      for (int r = 0; r < k; ++r) {
        std::string f = pick(rng, iris);
        ttl << " [ a owl:Restriction ; owl:onProperty <" << ns << "hasPart> ; owl:someValuesFrom <"
            << f << "> ]";
      }
      ttl << " ) ] .\n";
    }
    ttl << "<" << ns << "hasPart> a owl:ObjectProperty .\n";
  }
  out.turtle = ttl.str();
  return out;
}

}  // namespace ontoform::testing
