#include "ontoform/service.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ontoform/export.hpp"
#include "ontoform/form_json.hpp"

namespace ontoform {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(ApiCode code) noexcept {
  switch (code) {
    case ApiCode::BadRequest: return "BAD_REQUEST";
    case ApiCode::NotFound: return "NOT_FOUND";
    case ApiCode::MethodNotAllowed: return "METHOD_NOT_ALLOWED";
    case ApiCode::UnknownClass: return "UNKNOWN_CLASS";
    case ApiCode::NotAProduct: return "NOT_A_PRODUCT";
    case ApiCode::ValidationFailed: return "VALIDATION_FAILED";
    case ApiCode::StaleForm: return "STALE_FORM";
    case ApiCode::Conflict: return "CONFLICT";
    case ApiCode::SessionComplete: return "SESSION_COMPLETE";
    case ApiCode::CyclicDefinition: return "CYCLIC_DEFINITION";
    case ApiCode::UnsupportedFormat: return "UNSUPPORTED_FORMAT";
    case ApiCode::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

int http_status(ApiCode code) noexcept {
  switch (code) {
    case ApiCode::BadRequest: return 400;
    case ApiCode::NotFound: return 404;
    case ApiCode::MethodNotAllowed: return 405;
    case ApiCode::UnknownClass: return 404;
    case ApiCode::NotAProduct: return 422;
    case ApiCode::ValidationFailed: return 422;
    case ApiCode::StaleForm: return 409;
    case ApiCode::Conflict: return 409;
    case ApiCode::SessionComplete: return 409;
    case ApiCode::CyclicDefinition: return 422;
    case ApiCode::UnsupportedFormat: return 400;
    case ApiCode::Internal: return 500;
  }
  return 500;
}

namespace {

struct ApiFailure {
  ApiCode code;
  std::string message;
  ordered_json extra = ordered_json::object();
};

ApiResponse json_response(int status, const ordered_json& body) {
  return ApiResponse{status, "application/json", body.dump() + "\n", {}};
}

ApiResponse error_response(const ApiFailure& f) {
  ordered_json body;
  body["status"] = http_status(f.code);
  body["code"] = to_string(f.code);
  body["message"] = f.message;
  for (const auto& [k, v] : f.extra.items()) body[k] = v;
  return json_response(http_status(f.code), body);
}

ApiFailure from_engine(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnknownClass: return {ApiCode::UnknownClass, e.what()};
    case ErrorCode::NotAProduct: return {ApiCode::NotAProduct, e.what()};
    case ErrorCode::StaleForm: return {ApiCode::StaleForm, e.what()};
    case ErrorCode::SessionComplete: return {ApiCode::SessionComplete, e.what()};
    case ErrorCode::ValidationFailed: {
      ApiFailure f{ApiCode::ValidationFailed, e.what()};
      if (auto* v = dynamic_cast<const ValidationError*>(&e))
        f.extra["details"] = field_errors_to_json(v->errors());
      return f;
    }
    case ErrorCode::CyclicDefinition: {
      ApiFailure f{ApiCode::CyclicDefinition, e.what()};
      if (auto* c = dynamic_cast<const CycleError*>(&e)) f.extra["cycle"] = c->cycle();
      return f;
    }
    case ErrorCode::InvalidInput: return {ApiCode::BadRequest, e.what()};
    default: return {ApiCode::Internal, e.what()};
  }
}

json parse_body(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ApiFailure{ApiCode::BadRequest, "request body must be a JSON object"};
  return j;
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    auto j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    if (j > i) out.emplace_back(path.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

ordered_json progress_json(const Session& s) {
  auto p = session_progress(s);
  ordered_json j;
  j["state"] = to_string(p.state);
  j["revision"] = s.revision();
  j["progress"] = {{"answered", p.answered}, {"pending", p.pending}};
  return j;
}

}  // namespace

Service::Service(std::shared_ptr<const Ontology> ontology, std::filesystem::path data_dir,
                 std::function<void(const std::string&)> warn)
    : ontology_(std::move(ontology)), data_dir_(std::move(data_dir)) {
  std::filesystem::create_directories(data_dir_);
  for (const auto& entry : std::filesystem::directory_iterator(data_dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      auto slot = std::make_shared<Slot>(load_session(buf.str(), ontology_));
      sessions_.emplace(slot->session.id(), std::move(slot));
    } catch (const Error& e) {
      if (warn) warn("skipping " + entry.path().string() + ": " + e.what());
    }
  }
}

std::size_t Service::session_count() const {
  std::lock_guard lock(registry_mutex_);
  return sessions_.size();
}

std::shared_ptr<Service::Slot> Service::find(const std::string& id) const {
  std::lock_guard lock(registry_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiFailure{ApiCode::NotFound, "no session '" + id + "'"};
  return it->second;
}

void Service::persist(const Session& session) const {
  auto target = data_dir_ / (session.id() + ".json");
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << save_session(session);
    out.flush();
    if (!out) throw ApiFailure{ApiCode::Internal, "cannot write " + tmp.string()};
  }
  std::filesystem::rename(tmp, target);
}

std::string Service::new_session_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char hex[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 16; ++i) id.push_back(hex[rng() & 0xf]);
  return id;
}

ApiResponse Service::handle(const ApiRequest& request) {
  try {
    auto parts = split_path(request.path);
    if (parts.empty() || parts[0] != "api") throw ApiFailure{ApiCode::NotFound, "no such endpoint"};
    parts.erase(parts.begin());
    auto route = [&](std::string_view method) {
      if (request.method != method)
        throw ApiFailure{ApiCode::MethodNotAllowed, "method " + request.method + " not allowed"};
    };

    if (parts.size() == 1 && parts[0] == "products") {
      route("GET");
      return products();
    }
    if (parts.size() == 1 && parts[0] == "sessions") {
      route("POST");
      return create_session(request);
    }
    if (parts.size() >= 2 && parts.size() <= 3 && parts[0] == "sessions") {
      const std::string& id = parts[1];
      if (parts.size() == 2) {
        route("GET");
        return session_status(id);
      }
      if (parts[2] == "form") {
        route("GET");
        return session_form(id);
      }
      if (parts[2] == "answers") {
        route("POST");
        return submit(id, request);
      }
      if (parts[2] == "export") {
        route("GET");
        return export_session(id, request);
      }
    }
    throw ApiFailure{ApiCode::NotFound, "no such endpoint"};
  } catch (const ApiFailure& f) {
    return error_response(f);
  } catch (const Error& e) {
    return error_response(from_engine(e));
  } catch (const std::exception& e) {
    return error_response({ApiCode::Internal, e.what()});
  }
}

ApiResponse Service::products() {
  ordered_json out = ordered_json::array();
  for (const auto& p : list_products(*ontology_)) out.push_back({{"iri", p.iri}, {"label", p.label}});
  return json_response(200, out);
}

ApiResponse Service::create_session(const ApiRequest& request) {
  json body = parse_body(request.body);
  auto product = body.find("product");
  if (product == body.end() || !product->is_string())
    throw ApiFailure{ApiCode::BadRequest, "'product' must be a string"};

  std::string id;
  if (auto sid = body.find("session_id"); sid != body.end() && !sid->is_null()) {
    if (!sid->is_string()) throw ApiFailure{ApiCode::BadRequest, "'session_id' must be a string"};
    id = sid->get<std::string>();
  }

  std::lock_guard lock(registry_mutex_);
  if (id.empty()) {
    do id = new_session_id();
    while (sessions_.contains(id));
  } else if (sessions_.contains(id)) {
    throw ApiFailure{ApiCode::Conflict, "session '" + id + "' already exists"};
  }
  Session s = start_session(ontology_, product->get<std::string>(), id);
  persist(s);
  auto slot = std::make_shared<Slot>(s);
  sessions_.emplace(id, slot);

  ordered_json out;
  out["session_id"] = id;
  out["revision"] = s.revision();
  out["form"] = form_to_json(current_form(s));
  return json_response(201, out);
}

ApiResponse Service::session_status(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  return json_response(200, progress_json(slot->session));
}

ApiResponse Service::session_form(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  if (slot->session.state() == SessionState::Complete)
    return json_response(200, ordered_json{{"state", "Complete"}});
  return json_response(200, form_to_json(current_form(slot->session)));
}

ApiResponse Service::submit(const std::string& id, const ApiRequest& request) {
  json body = parse_body(request.body);
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  const Session& s = slot->session;

  auto revision = body.find("revision");
  if (revision == body.end() || !revision->is_number_integer())
    throw ApiFailure{ApiCode::BadRequest, "'revision' must be an integer"};
  if (revision->get<long long>() != static_cast<long long>(s.revision())) {
    ApiFailure f{ApiCode::Conflict, "revision " + revision->dump() + " is not current"};
    f.extra["revision"] = s.revision();
    throw f;
  }
  auto form_id = body.find("form_id");
  if (form_id == body.end() || !form_id->is_string())
    throw ApiFailure{ApiCode::BadRequest, "'form_id' must be a string"};

  FormSchema form = current_form(s);
  auto values = body.contains("values") ? body["values"] : json::object();
  Session next = submit_form(s, answer_from_json(form, form_id->get<std::string>(), values));
  persist(next);
  slot->session = std::move(next);

  ordered_json out;
  out["revision"] = slot->session.revision();
  out["state"] = to_string(slot->session.state());
  if (slot->session.state() == SessionState::InProgress)
    out["form"] = form_to_json(current_form(slot->session));
  return json_response(200, out);
}

ApiResponse Service::export_session(const std::string& id, const ApiRequest& request) {
  std::string format = "ttl";
  if (auto it = request.query.find("format"); it != request.query.end()) format = it->second;
  if (format != "ttl" && format != "html")
    throw ApiFailure{ApiCode::UnsupportedFormat, "format must be ttl or html"};

  auto slot = find(id);
  Session s = [&] {
    std::lock_guard lock(slot->mutex);
    return slot->session;
  }();
  ApiResponse r;
  if (format == "ttl") {
    r.content_type = "text/turtle; charset=utf-8";
    r.body = to_rdf(s);
  } else {
    r.content_type = "text/html; charset=utf-8";
    r.body = to_html(s);
  }
  r.headers["Content-Disposition"] = "attachment; filename=\"" + id + "." + format + "\"";
  return r;
}

std::pair<std::string, int> parse_bind_address(std::string_view text) {
  std::string host = "127.0.0.1";
  std::string_view port_text = text;
  if (auto colon = text.rfind(':'); colon != std::string_view::npos) {
    host = std::string(text.substr(0, colon));
    port_text = text.substr(colon + 1);
  }
  int port = -1;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port < 0 ||
      port > 65535 || host.empty())
    throw Error(ErrorCode::InvalidInput, "invalid bind address: " + std::string(text));
  return {host, port};
}

}  // namespace ontoform
