#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ontoform/axiom.hpp"
#include "ontoform/error.hpp"
#include "ontoform/export.hpp"
#include "ontoform/form_json.hpp"
#include "ontoform/merge.hpp"
#include "ontoform/ontology.hpp"
#include "ontoform/service.hpp"
#include "ontoform/session.hpp"
#include "ontoform/thesaurus.hpp"
#include "ontoform/turtle.hpp"

namespace ontoform::cli {

namespace {

using nlohmann::json;

// I/O failures map to the input-error exit code.
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Script or session-flow problems map to the check-error exit code.
struct FlowFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw IoFailure("cannot write " + path);
}

Graph read_turtle(const std::string& path) { return parse_turtle(read_file(path)); }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidTriple:
    case ErrorCode::UnknownClass:
    case ErrorCode::NotAProduct:
      return InputError;
    default:
      return CheckError;
  }
}

void report_error(const Error& e, std::ostream& err) {
  err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
  if (auto* v = dynamic_cast<const ValidationError*>(&e))
    for (const auto& f : v->errors()) err << "  " << f.field << ": " << f.message << "\n";
  if (auto* c = dynamic_cast<const CycleError*>(&e)) {
    err << "cycle:";
    for (std::size_t i = 0; i < c->cycle().size(); ++i)
      err << (i ? " -> " : " ") << c->cycle()[i];
    err << "\n";
  }
}

Graph::Namespaces display_namespaces(const Graph& g) {
  Graph::Namespaces ns = standard_namespaces();
  for (const auto& [p, b] : g.namespaces()) ns[p] = b;
  return ns;
}

std::string random_session_id() {
  std::mt19937_64 rng{std::random_device{}()};
  static constexpr char hex[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 16; ++i) id.push_back(hex[rng() & 0xf]);
  return id;
}

// transform ------------------------------------------------------------------

struct TransformArgs {
  std::string input;
  std::string output;
  std::string format;
  std::string base = "urn:ontoform:thesaurus#";
  bool reduce = false;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
  std::string format = a.format;
  if (format.empty())
    format = std::filesystem::path(a.input).extension() == ".csv" ? "csv" : "skos";

  ConceptScheme scheme;
  Graph::Namespaces namespaces;
  if (format == "csv") {
    scheme = scheme_from_csv(read_file(a.input), a.base);
  } else {
    Graph g = read_turtle(a.input);
    namespaces = g.namespaces();
    scheme = scheme_from_graph(g);
  }
  Hierarchy h = extract_hierarchy(scheme);
  std::size_t before = h.edges.size();
  if (a.reduce) h = transitive_reduction(h);

  Graph g = hierarchy_to_graph(h);
  for (const auto& [p, b] : namespaces) g.set_namespace(p, b);
  write_file(a.output, serialize_turtle(g));
  out << "classes: " << h.classes.size() << "\n";
  out << "edges: " << h.edges.size() << "\n";
  if (a.reduce) out << "redundant edges removed: " << before - h.edges.size() << "\n";
  return Ok;
}

// merge ----------------------------------------------------------------------

struct MergeArgs {
  std::string left;
  std::string right;
  std::string output;
  std::string report;
};

int cmd_merge(const MergeArgs& a, std::ostream& out) {
  Graph left = read_turtle(a.left);
  Graph right = read_turtle(a.right);
  auto [alignment, report] = align_by_label(left, right);
  auto merged = intersect_merge(left, right, alignment);
  merged.report.name_conflicts = std::move(report.name_conflicts);

  write_file(a.output, serialize_turtle(merged.graph));
  write_file(a.report, report_to_json(merged.report));
  const auto& r = merged.report;
  out << "matched classes: " << alignment.matches.size() << "\n";
  out << "carried classes: " << r.carried_classes.size() << "\n";
  out << "name conflicts: " << r.name_conflicts.size() << "\n";
  out << "hierarchy redundancies: " << r.hierarchy_redundancies.size() << "\n";
  if (r.reef_fraction) {
    std::ostringstream pct;
    pct.setf(std::ios::fixed);
    pct.precision(1);
    pct << *r.reef_fraction * 100.0;
    out << "right classes backed by left: " << pct.str() << "%\n";
  }
  return Ok;
}

// components -----------------------------------------------------------------

int cmd_components(const std::string& ontology, const std::string& cls, std::ostream& out) {
  Graph g = read_turtle(ontology);
  const std::string iri_value = resolve_class(g, cls);
  auto ns = display_namespaces(g);
  for (const auto& r : components_of(g, iri_value))
    out << render_iri(r.property, ns) << " " << render_iri(r.filler, ns) << "\n";
  return Ok;
}

// wizard ---------------------------------------------------------------------

struct WizardArgs {
  std::string ontology;
  std::string product;
  std::string output;
  std::string answers;
  std::string session_id;
  std::string root;
};

std::shared_ptr<const Ontology> load_ontology(const std::string& path, const std::string& root) {
  Graph g = read_turtle(path);
  std::optional<std::string> r;
  if (!root.empty()) r = resolve_class(g, root);
  return Ontology::load(std::move(g), r);
}

Session run_script(Session s, const std::string& path) {
  json script = json::parse(read_file(path), nullptr, false);
  if (script.is_discarded() || !script.is_array())
    throw IoFailure(path + ": answers script must be a JSON array");
  const Graph& g = s.ontology()->graph();
  std::size_t step = 0;
  for (const auto& entry : script) {
    ++step;
    if (!entry.is_object() || !entry.contains("concept") || !entry["concept"].is_string())
      throw IoFailure(path + ": step " + std::to_string(step) + " needs a \"concept\" string");
    if (s.state() == SessionState::Complete)
      throw FlowFailure("step " + std::to_string(step) + ": session already complete");
    FormSchema form = current_form(s);
    const std::string cls = resolve_class(g, entry["concept"].get<std::string>());
    if (cls != form.cls)
      throw Error(ErrorCode::StaleForm, "step " + std::to_string(step) + " answers " + cls +
                                            " but the current form is for " + form.cls);
    std::string form_id = form.form_id;
    if (auto it = entry.find("form_id"); it != entry.end()) {
      if (!it->is_string()) throw IoFailure(path + ": \"form_id\" must be a string");
      form_id = it->get<std::string>();
    }
    json values = entry.contains("values") ? entry["values"] : json::object();
    s = submit_form(s, answer_from_json(form, form_id, values));
  }
  if (s.state() != SessionState::Complete)
    throw FlowFailure("answers script ended with " + std::to_string(s.frontier().size()) +
                      " form(s) pending");
  return s;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Session run_interactive(Session s, std::istream& in, std::ostream& out) {
  while (s.state() == SessionState::InProgress) {
    FormSchema form = current_form(s);
    auto p = session_progress(s);
    out << "\n== " << form.title << " [" << p.answered + 1 << "/" << p.answered + p.pending
        << "+]\n";
    if (!form.components.empty()) {
      out << "components:";
      for (const auto& c : form.components) out << " " << c.label << ";";
      out << "\n";
    }
    FormAnswer answer{form.form_id, {}};
    for (const auto& f : form.fields) {
      out << f.label << " (" << to_string(f.datatype) << (f.required ? ", required" : "")
          << "): " << std::flush;
      std::string line;
      if (!std::getline(in, line)) throw FlowFailure("input ended before the session completed");
      line = trim(line);
      if (!line.empty()) answer.values[f.id] = LiteralValue{line, f.datatype};
    }
    try {
      s = submit_form(s, answer);
    } catch (const ValidationError& e) {
      for (const auto& fe : e.errors()) out << "  " << fe.field << ": " << fe.message << "\n";
    }
  }
  return s;
}

int cmd_wizard(const WizardArgs& a, std::istream& in, std::ostream& out) {
  auto ontology = load_ontology(a.ontology, a.root);
  const std::string product = resolve_class(ontology->graph(), a.product);
  Session s = start_session(ontology, product, a.session_id.empty() ? random_session_id()
                                                                      : a.session_id);
  s = a.answers.empty() ? run_interactive(std::move(s), in, out) : run_script(std::move(s), a.answers);

  write_file(a.output + ".ttl", to_rdf(s));
  write_file(a.output + ".html", to_html(s));
  out << "session " << s.id() << ": " << to_string(s.state()) << ", " << s.answers().size()
      << " instance(s)\n";
  out << "wrote " << a.output << ".ttl\n";
  out << "wrote " << a.output << ".html\n";
  return Ok;
}

// serve ----------------------------------------------------------------------

struct ServeArgs {
  std::string ontology;
  std::string bind;
  std::string data_dir;
  std::string root;
};

std::string env_or(const std::string& flag, const char* name, const std::string& fallback) {
  if (!flag.empty()) return flag;
  if (const char* v = std::getenv(name); v && *v) return v;
  return fallback;
}

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  const std::string ontology_path = env_or(a.ontology, "ONTOFORM_ONTOLOGY", "");
  const std::string bind = env_or(a.bind, "ONTOFORM_BIND", "127.0.0.1:8080");
  const std::string data_dir = env_or(a.data_dir, "ONTOFORM_DATA_DIR", "sessions");
  if (ontology_path.empty()) {
    err << "error: no ontology given (--ontology or ONTOFORM_ONTOLOGY)\n";
    return Usage;
  }
  auto ontology = load_ontology(ontology_path, a.root);
  Service service(ontology, data_dir, [&](const std::string& m) { err << "warning: " << m << "\n"; });
  HttpServer server(service);
  auto [host, port] = parse_bind_address(bind);
  int bound = server.bind(host, port);
  if (bound < 0) throw IoFailure("cannot bind " + bind);
  out << "ontoform listening on http://" << host << ":" << bound << " ("
      << service.session_count() << " session(s) loaded)\n"
      << std::flush;
  return server.listen() ? Ok : InputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Ontology-driven dynamic forms: thesaurus transform, merge, form wizard, service",
               "ontoform"};
  app.require_subcommand(1);

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "SKOS Turtle or CSV thesaurus to a class hierarchy");
  transform->add_option("--input", ta.input, "Thesaurus file (.ttl SKOS or .csv)")->required();
  transform->add_option("--output", ta.output, "Hierarchy ontology (Turtle)")->required();
  transform->add_option("--format", ta.format, "Input format; default from extension")
      ->check(CLI::IsMember({"skos", "csv"}));
  transform->add_option("--base", ta.base, "Namespace for CSV identifiers")->capture_default_str();
  transform->add_flag("--reduce", ta.reduce, "Drop edges implied by transitivity");

  MergeArgs ma;
  auto* merge = app.add_subcommand("merge", "Intersection merge of two ontologies by label");
  merge->add_option("--left", ma.left, "Left ontology (e.g. thesaurus hierarchy)")->required();
  merge->add_option("--right", ma.right, "Right ontology (definitions kept)")->required();
  merge->add_option("--output", ma.output, "Merged ontology (Turtle)")->required();
  merge->add_option("--report", ma.report, "Conflict report (JSON)")->required();

  std::string comp_ontology, comp_class;
  auto* components = app.add_subcommand("components", "Print the components of a defined class");
  components->add_option("--ontology", comp_ontology, "Ontology (Turtle)")->required();
  components->add_option("class", comp_class, "Class IRI, prefixed name or local name")->required();

  WizardArgs wa;
  auto* wizard = app.add_subcommand("wizard", "Fill the chained forms of a product");
  wizard->add_option("--ontology", wa.ontology, "Ontology (Turtle)")->required();
  wizard->add_option("--product", wa.product, "Product class")->required();
  wizard->add_option("--output", wa.output, "Output stem; writes <stem>.ttl and <stem>.html")
      ->required();
  wizard->add_option("--answers", wa.answers, "JSON answers script; omit for prompts");
  wizard->add_option("--session-id", wa.session_id, "Session id (default: random)");
  wizard->add_option("--root", wa.root, "Product root class (default: from the ontology header)");

  ServeArgs sa;
  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON service");
  serve->add_option("--ontology", sa.ontology, "Ontology (env ONTOFORM_ONTOLOGY)");
  serve->add_option("--bind", sa.bind, "host:port (env ONTOFORM_BIND, default 127.0.0.1:8080)");
  serve->add_option("--data-dir", sa.data_dir, "Session directory (env ONTOFORM_DATA_DIR)");
  serve->add_option("--root", sa.root, "Product root class (default: from the ontology header)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? Ok : Usage;
  }

  try {
    if (*transform) return cmd_transform(ta, out);
    if (*merge) return cmd_merge(ma, out);
    if (*components) return cmd_components(comp_ontology, comp_class, out);
    if (*wizard) return cmd_wizard(wa, in, out);
    if (*serve) return cmd_serve(sa, out, err);
  } catch (const Error& e) {
    report_error(e, err);
    return exit_code_for(e.code());
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const FlowFailure& e) {
    err << "error: " << e.what() << "\n";
    return CheckError;
  }
  return Usage;
}

}  // namespace ontoform::cli
