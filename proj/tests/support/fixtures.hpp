#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ontoform/form_json.hpp"
#include "ontoform/session.hpp"
#include "ontoform/turtle.hpp"

namespace ontoform::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(ONTOFORM_TEST_DATA_DIR) / name;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

inline Graph load_graph(const std::string& name) { return parse_turtle(read_text(data_path(name))); }

inline std::shared_ptr<const Ontology> pv_ontology() {
  static auto ont = Ontology::load(load_graph("pv_ontology.ttl"));
  return ont;
}

inline const std::string dt = "http://www.cstb.fr/ontodt#";

inline nlohmann::json load_script(const std::string& name) {
  return nlohmann::json::parse(read_text(data_path(name)));
}

inline Session start_fixture(const std::string& product, const std::string& id = "t1") {
  return start_session(pv_ontology(), dt + product, id);
}

// Answer for the current form from one script step's `values`.
inline FormAnswer answer_for(const Session& s, const nlohmann::json& values) {
  auto form = current_form(s);
  return answer_from_json(form, form.form_id, values);
}

// Applies every step of a script; steps carry `values` only, the concept is
// whatever the session asks for next.
inline Session run_script(Session s, const nlohmann::json& script, std::size_t limit = SIZE_MAX) {
  std::size_t n = 0;
  for (const auto& step : script) {
    if (n++ == limit) break;
    s = submit_form(s, answer_for(s, step.at("values")));
  }
  return s;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ontoform-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace ontoform::testing
