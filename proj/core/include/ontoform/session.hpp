#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontoform/axiom.hpp"
#include "ontoform/error.hpp"
#include "ontoform/graph.hpp"

namespace ontoform {

// A validated ontology, shared read-only between sessions.
class Ontology {
 public:
  // Runs validate_ontology. The product root is taken from `root` when given,
  // else from `of:productRoot` on the owl:Ontology header, else left unset.
  // Throws the validation errors, or Error(UnknownClass) for an undeclared root.
  static std::shared_ptr<const Ontology> load(Graph graph,
                                              std::optional<std::string> root = std::nullopt);

  const Graph& graph() const noexcept { return graph_; }
  const std::string& hash() const noexcept { return hash_; }
  const std::optional<std::string>& root() const noexcept { return root_; }

  // Throws Error(InvalidInput) when no root is configured.
  const std::string& require_root() const;

 private:
  Ontology() = default;

  Graph graph_;
  std::string hash_;
  std::optional<std::string> root_;
};

struct ProductEntry {
  std::string iri;
  std::string label;

  friend bool operator==(const ProductEntry&, const ProductEntry&) = default;
};

// Strict named descendants of root, sorted by label then IRI.
// Throws Error(UnknownClass) when root is not declared.
std::vector<ProductEntry> list_products(const Graph& graph, std::string_view root);
std::vector<ProductEntry> list_products(const Ontology& ontology);

inline constexpr std::string_view designation_field = "designation";
inline constexpr std::string_view quantity_field = "quantite";

struct FormField {
  std::string id;
  std::string label;
  Datatype datatype = Datatype::String;
  bool required = false;
  std::string property;  // predicate written for this field

  friend bool operator==(const FormField&, const FormField&) = default;
};

struct ComponentChoice {
  std::string property;
  std::string cls;
  std::string label;

  friend bool operator==(const ComponentChoice&, const ComponentChoice&) = default;
};

struct FormSchema {
  std::string form_id;
  std::string cls;
  std::string title;
  std::vector<FormField> fields;
  std::vector<ComponentChoice> components;

  const FormField* field(std::string_view id) const;

  friend bool operator==(const FormSchema&, const FormSchema&) = default;
};

// Form for one class: `designation`, then `quantite` on component forms,
// then properties_of(cls). Field ids are property local names, suffixed
// `-2`, `-3`... on collision.
FormSchema build_form(const Graph& graph, std::string_view cls, bool component,
                      std::string form_id);

struct LiteralValue {
  std::string lexical;
  Datatype datatype = Datatype::String;

  friend bool operator==(const LiteralValue&, const LiteralValue&) = default;
};

struct FormAnswer {
  std::string form_id;
  std::map<std::string, LiteralValue> values;

  friend bool operator==(const FormAnswer&, const FormAnswer&) = default;
};

// Field-level problems of an answer against a schema; empty when valid.
std::vector<FieldError> validate_answer(const FormSchema& schema, const FormAnswer& answer);

struct FrontierEntry {
  std::optional<std::string> parent;    // instance IRI
  std::optional<std::string> property;  // link from parent
  std::string cls;
  // Defined concepts above this entry, outermost first.
  std::vector<std::string> path;

  friend bool operator==(const FrontierEntry&, const FrontierEntry&) = default;
};

struct AnsweredForm {
  std::string instance;
  std::string cls;
  std::optional<std::string> parent;
  std::optional<std::string> property;
  FormAnswer answer;

  friend bool operator==(const AnsweredForm&, const AnsweredForm&) = default;
};

enum class SessionState { InProgress, Complete };

std::string_view to_string(SessionState state) noexcept;

struct Progress {
  std::size_t answered = 0;
  std::size_t pending = 0;
  SessionState state = SessionState::InProgress;

  friend bool operator==(const Progress&, const Progress&) = default;
};

// Immutable snapshot of a form-chaining session; submit_form returns a new one.
class Session {
 public:
  const std::string& id() const noexcept { return id_; }
  const std::shared_ptr<const Ontology>& ontology() const noexcept { return ontology_; }
  const std::string& product() const noexcept { return product_; }
  const std::vector<FrontierEntry>& frontier() const noexcept { return frontier_; }
  const std::set<std::string>& visited() const noexcept { return visited_; }
  const std::vector<AnsweredForm>& answers() const noexcept { return answers_; }
  const Graph& annotations() const noexcept { return annotations_; }
  SessionState state() const noexcept {
    return frontier_.empty() ? SessionState::Complete : SessionState::InProgress;
  }
  std::size_t revision() const noexcept { return answers_.size(); }

  friend bool operator==(const Session& a, const Session& b);

 private:
  friend Session start_session(std::shared_ptr<const Ontology>, std::string_view, std::string);
  friend Session submit_form(const Session&, const FormAnswer&);

  std::string id_;
  std::shared_ptr<const Ontology> ontology_;
  std::string product_;
  std::vector<FrontierEntry> frontier_;
  std::set<std::string> visited_;
  std::vector<AnsweredForm> answers_;
  Graph annotations_;
};

// Session ids are 1-64 characters from [A-Za-z0-9._-].
bool valid_session_id(std::string_view id) noexcept;

// Namespace of the instances minted by a session.
std::string session_namespace(std::string_view session_id);
std::string instance_iri(std::string_view session_id, std::size_t k);

// Throws Error(UnknownClass), Error(NotAProduct) or Error(InvalidInput) for a
// bad session id or a missing product root.
Session start_session(std::shared_ptr<const Ontology> ontology, std::string_view product,
                      std::string session_id);

// Throws Error(SessionComplete).
FormSchema current_form(const Session& session);

// Throws Error(SessionComplete), Error(StaleForm), ValidationError, or
// CycleError(CyclicDefinition). The input session is never modified.
Session submit_form(const Session& session, const FormAnswer& answer);

Progress session_progress(const Session& session) noexcept;

// JSON document; see load_session for the checks applied on the way back.
std::string save_session(const Session& session);

// Throws Error(OntologyMismatch) when the recorded hash differs and
// Error(CorruptSession) when the document is malformed or its recorded
// frontier, visited set or annotations disagree with a replay of its answers.
Session load_session(std::string_view document, std::shared_ptr<const Ontology> ontology);

}  // namespace ontoform
