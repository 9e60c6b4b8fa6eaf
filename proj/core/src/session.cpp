#include "ontoform/session.hpp"

#include <algorithm>
#include <chrono>
#include <regex>

#include <nlohmann/json.hpp>

#include "ontoform/hash.hpp"
#include "ontoform/ontology.hpp"
#include "ontoform/turtle.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {

using nlohmann::json;
using nlohmann::ordered_json;

std::shared_ptr<const Ontology> Ontology::load(Graph graph, std::optional<std::string> root) {
  validate_ontology(graph);
  if (!root) {
    for (const auto& header : graph.subjects(iri(vocab::rdf::type), iri(vocab::owl::ontology))) {
      auto r = graph.object(header, iri(vocab::of::product_root));
      if (r && r->is_iri()) {
        root = r->value();
        break;
      }
    }
  }
  if (root && !is_declared_class(graph, *root))
    throw Error(ErrorCode::UnknownClass, "unknown class: " + *root);

  std::shared_ptr<Ontology> out(new Ontology());
  out->hash_ = graph_hash(graph);
  out->graph_ = std::move(graph);
  out->root_ = std::move(root);
  return out;
}

const std::string& Ontology::require_root() const {
  if (!root_) throw Error(ErrorCode::InvalidInput, "no product root configured");
  return *root_;
}

std::vector<ProductEntry> list_products(const Graph& graph, std::string_view root) {
  if (!is_declared_class(graph, root))
    throw Error(ErrorCode::UnknownClass, "unknown class: " + std::string(root));
  std::vector<ProductEntry> out;
  for (const auto& d : descendants(graph, root)) out.push_back({d, label_of(graph, d)});
  std::sort(out.begin(), out.end(), [](const ProductEntry& a, const ProductEntry& b) {
    return std::tie(a.label, a.iri) < std::tie(b.label, b.iri);
  });
  return out;
}

std::vector<ProductEntry> list_products(const Ontology& ontology) {
  return list_products(ontology.graph(), ontology.require_root());
}

const FormField* FormSchema::field(std::string_view id) const {
  for (const auto& f : fields)
    if (f.id == id) return &f;
  return nullptr;
}

FormSchema build_form(const Graph& graph, std::string_view cls, bool component,
                      std::string form_id) {
  FormSchema form;
  form.form_id = std::move(form_id);
  form.cls = std::string(cls);
  form.title = label_of(graph, cls);

  std::set<std::string> ids;
  auto add = [&](std::string id, std::string label, Datatype dt, bool required,
                 std::string property) {
    std::string unique = id;
    for (int n = 2; ids.contains(unique); ++n) unique = id + "-" + std::to_string(n);
    ids.insert(unique);
    form.fields.push_back({unique, std::move(label), dt, required, std::move(property)});
  };
  add(std::string(designation_field), "Désignation", Datatype::String, true,
      std::string(vocab::of::designation));
  if (component)
    add(std::string(quantity_field), "Quantité", Datatype::Integer, false,
        std::string(vocab::of::quantite));
  for (const auto& p : properties_of(graph, cls))
    add(local_name(p.property), p.label, p.datatype, false, p.property);

  for (const auto& r : components_of(graph, cls))
    form.components.push_back({r.property, r.filler, label_of(graph, r.filler)});
  return form;
}

namespace {

bool valid_date(const std::string& s) {
  static const std::regex shape(R"(\d{4}-\d{2}-\d{2})");
  if (!std::regex_match(s, shape)) return false;
  std::chrono::year_month_day ymd{std::chrono::year(std::stoi(s.substr(0, 4))),
                                  std::chrono::month(static_cast<unsigned>(std::stoi(s.substr(5, 2)))),
                                  std::chrono::day(static_cast<unsigned>(std::stoi(s.substr(8, 2))))};
  return ymd.ok();
}

std::optional<std::string> lexical_problem(const LiteralValue& v) {
  static const std::regex decimal(R"([+-]?(\d+(\.\d*)?|\.\d+))");
  static const std::regex integer(R"([+-]?\d+)");
  switch (v.datatype) {
    case Datatype::String: return std::nullopt;
    case Datatype::Decimal:
      if (std::regex_match(v.lexical, decimal)) return std::nullopt;
      return "'" + v.lexical + "' is not a decimal";
    case Datatype::Integer:
      if (std::regex_match(v.lexical, integer)) return std::nullopt;
      return "'" + v.lexical + "' is not an integer";
    case Datatype::Boolean:
      if (v.lexical == "true" || v.lexical == "false" || v.lexical == "1" || v.lexical == "0")
        return std::nullopt;
      return "'" + v.lexical + "' is not a boolean";
    case Datatype::Date:
      if (valid_date(v.lexical)) return std::nullopt;
      return "'" + v.lexical + "' is not a date (YYYY-MM-DD)";
  }
  return std::nullopt;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::vector<FieldError> validate_answer(const FormSchema& schema, const FormAnswer& answer) {
  std::vector<FieldError> errors;
  for (const auto& [id, value] : answer.values) {
    const FormField* f = schema.field(id);
    if (!f) {
      errors.push_back({id, "unknown field"});
      continue;
    }
    if (value.datatype != f->datatype) {
      errors.push_back({id, "expected " + std::string(to_string(f->datatype)) + ", got " +
                                std::string(to_string(value.datatype))});
      continue;
    }
    if (auto problem = lexical_problem(value)) {
      errors.push_back({id, *problem});
      continue;
    }
    if (id == quantity_field && std::stoll(value.lexical) < 1)
      errors.push_back({id, "must be at least 1"});
  }
  for (const auto& f : schema.fields) {
    if (!f.required) continue;
    auto it = answer.values.find(f.id);
    if (it == answer.values.end() || blank(it->second.lexical))
      errors.push_back({f.id, "required"});
  }
  std::sort(errors.begin(), errors.end(), [](const FieldError& a, const FieldError& b) {
    return std::tie(a.field, a.message) < std::tie(b.field, b.message);
  });
  return errors;
}

std::string_view to_string(SessionState state) noexcept {
  return state == SessionState::Complete ? "Complete" : "InProgress";
}

bool operator==(const Session& a, const Session& b) {
  return a.id_ == b.id_ && a.ontology_->hash() == b.ontology_->hash() &&
         a.product_ == b.product_ && a.frontier_ == b.frontier_ && a.visited_ == b.visited_ &&
         a.answers_ == b.answers_ && a.annotations_ == b.annotations_ &&
         a.annotations_.namespaces() == b.annotations_.namespaces();
}

bool valid_session_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
  });
}

std::string session_namespace(std::string_view session_id) {
  return "urn:ontoform:session:" + std::string(session_id) + ":";
}

std::string instance_iri(std::string_view session_id, std::size_t k) {
  return session_namespace(session_id) + "inst-" + std::to_string(k);
}

Session start_session(std::shared_ptr<const Ontology> ontology, std::string_view product,
                      std::string session_id) {
  if (!valid_session_id(session_id))
    throw Error(ErrorCode::InvalidInput, "invalid session id: '" + session_id + "'");
  const Graph& g = ontology->graph();
  if (!is_declared_class(g, product))
    throw Error(ErrorCode::UnknownClass, "unknown class: " + std::string(product));
  const auto& root = ontology->require_root();
  if (!descendants(g, root).contains(std::string(product)))
    throw Error(ErrorCode::NotAProduct,
                std::string(product) + " is not a product under " + root);

  Session s;
  s.id_ = std::move(session_id);
  s.ontology_ = std::move(ontology);
  s.product_ = std::string(product);
  s.frontier_.push_back({std::nullopt, std::nullopt, s.product_, {}});
  s.annotations_.set_namespaces(g.namespaces());
  s.annotations_.set_namespace("of", std::string(vocab::of::ns));
  s.annotations_.set_namespace("s", session_namespace(s.id_));
  return s;
}

namespace {

std::string form_id_for(const Session& s) { return "form-" + std::to_string(s.revision() + 1); }

Term literal_of(const LiteralValue& v) {
  if (v.datatype == Datatype::String) return Term::string_literal(v.lexical);
  return Term::literal(v.lexical, datatype_iri(v.datatype));
}

}  // namespace

FormSchema current_form(const Session& session) {
  if (session.state() == SessionState::Complete)
    throw Error(ErrorCode::SessionComplete, "session " + session.id() + " is complete");
  const auto& head = session.frontier().front();
  return build_form(session.ontology()->graph(), head.cls, head.parent.has_value(),
                    form_id_for(session));
}

Session submit_form(const Session& session, const FormAnswer& answer) {
  FormSchema form = current_form(session);
  if (answer.form_id != form.form_id)
    throw Error(ErrorCode::StaleForm,
                "form '" + answer.form_id + "' is stale; current form is '" + form.form_id + "'");
  if (auto errors = validate_answer(form, answer); !errors.empty())
    throw ValidationError(std::move(errors));

  const FrontierEntry& head = session.frontier().front();
  std::vector<std::string> child_path = head.path;
  if (!form.components.empty()) child_path.push_back(head.cls);

  std::vector<FrontierEntry> children;
  const std::string instance = instance_iri(session.id(), session.revision() + 1);
  for (const auto& c : form.components) {
    auto hit = std::find(child_path.begin(), child_path.end(), c.cls);
    if (hit != child_path.end()) {
      std::vector<std::string> cycle(hit, child_path.end());
      cycle.push_back(c.cls);
      throw CycleError(ErrorCode::CyclicDefinition, std::move(cycle));
    }
    children.push_back({instance, c.property, c.cls, child_path});
  }

  Session next = session;
  Graph& g = next.annotations_;
  const Term node = Term::iri(instance);
  g.insert(node, iri(vocab::rdf::type), Term::iri(head.cls));
  for (const auto& [id, value] : answer.values)
    g.insert(node, Term::iri(form.field(id)->property), literal_of(value));
  if (head.parent) g.insert(Term::iri(*head.parent), Term::iri(*head.property), node);

  next.answers_.push_back({instance, head.cls, head.parent, head.property, answer});
  next.frontier_.erase(next.frontier_.begin());
  next.frontier_.insert(next.frontier_.end(), children.begin(), children.end());
  next.visited_.clear();
  for (const auto& e : next.frontier_) next.visited_.insert(e.path.begin(), e.path.end());
  return next;
}

Progress session_progress(const Session& session) noexcept {
  return {session.answers().size(), session.frontier().size(), session.state()};
}

namespace {

ordered_json optional_json(const std::optional<std::string>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::string save_session(const Session& session) {
  ordered_json doc;
  doc["session_id"] = session.id();
  doc["ontology_hash"] = session.ontology()->hash();
  doc["product"] = session.product();
  doc["frontier"] = ordered_json::array();
  for (const auto& e : session.frontier())
    doc["frontier"].push_back({{"parent", optional_json(e.parent)},
                               {"property", optional_json(e.property)},
                               {"concept", e.cls},
                               {"path", e.path}});
  doc["visited"] = session.visited();
  doc["answers"] = ordered_json::array();
  for (const auto& a : session.answers()) {
    ordered_json values = ordered_json::object();
    for (const auto& [id, v] : a.answer.values)
      values[id] = {{"lexical", v.lexical}, {"datatype", to_string(v.datatype)}};
    doc["answers"].push_back({{"instance", a.instance},
                              {"concept", a.cls},
                              {"parent", optional_json(a.parent)},
                              {"property", optional_json(a.property)},
                              {"form_id", a.answer.form_id},
                              {"values", std::move(values)}});
  }
  doc["annotations_ttl"] = serialize_turtle(session.annotations());
  return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void corrupt(const std::string& why) {
  throw Error(ErrorCode::CorruptSession, "corrupt session document: " + why);
}

const json& member(const json& obj, const char* key, json::value_t type) {
  auto it = obj.find(key);
  if (it == obj.end()) corrupt(std::string("missing '") + key + "'");
  bool ok = it->type() == type ||
            (type == json::value_t::number_unsigned && it->is_number_integer());
  if (!ok) corrupt(std::string("'") + key + "' has the wrong type");
  return *it;
}

std::string string_member(const json& obj, const char* key) {
  return member(obj, key, json::value_t::string).get<std::string>();
}

std::optional<std::string> nullable_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) corrupt(std::string("missing '") + key + "'");
  if (it->is_null()) return std::nullopt;
  if (!it->is_string()) corrupt(std::string("'") + key + "' has the wrong type");
  return it->get<std::string>();
}

std::vector<std::string> string_array(const json& arr, const char* what) {
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) corrupt(std::string("non-string entry in '") + what + "'");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

Session load_session(std::string_view document, std::shared_ptr<const Ontology> ontology) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    corrupt(e.what());
  }
  if (!doc.is_object()) corrupt("not a JSON object");
  const std::string hash = string_member(doc, "ontology_hash");
  if (hash != ontology->hash())
    throw Error(ErrorCode::OntologyMismatch,
                "session was saved against ontology " + hash + ", loaded ontology is " +
                    ontology->hash());

  const std::string id = string_member(doc, "session_id");
  const std::string product = string_member(doc, "product");

  std::vector<FrontierEntry> frontier;
  for (const auto& e : member(doc, "frontier", json::value_t::array)) {
    if (!e.is_object()) corrupt("frontier entry is not an object");
    frontier.push_back({nullable_string(e, "parent"), nullable_string(e, "property"),
                        string_member(e, "concept"),
                        string_array(member(e, "path", json::value_t::array), "path")});
  }
  auto visited_list = string_array(member(doc, "visited", json::value_t::array), "visited");
  std::set<std::string> visited(visited_list.begin(), visited_list.end());

  std::vector<AnsweredForm> answers;
  for (const auto& a : member(doc, "answers", json::value_t::array)) {
    if (!a.is_object()) corrupt("answer is not an object");
    AnsweredForm form{string_member(a, "instance"), string_member(a, "concept"),
                      nullable_string(a, "parent"), nullable_string(a, "property"),
                      FormAnswer{string_member(a, "form_id"), {}}};
    for (const auto& [field, v] : member(a, "values", json::value_t::object).items()) {
      if (!v.is_object()) corrupt("value of '" + field + "' is not an object");
      auto dt = datatype_from_name(string_member(v, "datatype"));
      if (!dt) corrupt("unknown datatype for '" + field + "'");
      form.answer.values[field] = LiteralValue{string_member(v, "lexical"), *dt};
    }
    answers.push_back(std::move(form));
  }
  const std::string ttl = string_member(doc, "annotations_ttl");

  // Replaying the answers must land exactly on the recorded state.
  try {
    Session s = start_session(std::move(ontology), product, id);
    for (const auto& a : answers) {
      if (s.state() == SessionState::Complete) corrupt("answers continue past completion");
      const auto& head = s.frontier().front();
      if (a.cls != head.cls || a.parent != head.parent || a.property != head.property ||
          a.instance != instance_iri(id, s.revision() + 1))
        corrupt("answer " + a.instance + " does not follow the frontier");
      s = submit_form(s, a.answer);
    }
    if (s.frontier() != frontier) corrupt("frontier disagrees with the answers");
    if (s.visited() != visited) corrupt("visited set disagrees with the answers");
    if (parse_turtle(ttl) != s.annotations()) corrupt("annotations disagree with the answers");
    return s;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptSession) throw;
    corrupt(e.what());
  }
}

}  // namespace ontoform
