#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "ontoform/session.hpp"

namespace ontoform {

// Published error codes of the HTTP API.
enum class ApiCode {
  BadRequest,
  NotFound,
  MethodNotAllowed,
  UnknownClass,
  NotAProduct,
  ValidationFailed,
  StaleForm,
  Conflict,
  SessionComplete,
  CyclicDefinition,
  UnsupportedFormat,
  Internal,
};

std::string_view to_string(ApiCode code) noexcept;
int http_status(ApiCode code) noexcept;

struct ApiRequest {
  std::string method;  // "GET", "POST", ...
  std::string path;    // without query string
  std::multimap<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

// Session lifecycle over JSON, independent of the transport. Every mutation
// is written to `<data_dir>/<session id>.json` before the response is built;
// sessions found there are reloaded on construction.
class Service {
 public:
  // `warn` receives one line per persisted session that could not be reloaded.
  Service(std::shared_ptr<const Ontology> ontology, std::filesystem::path data_dir,
          std::function<void(const std::string&)> warn = {});

  ApiResponse handle(const ApiRequest& request);

  const Ontology& ontology() const noexcept { return *ontology_; }
  std::size_t session_count() const;

 private:
  struct Slot {
    explicit Slot(Session s) : session(std::move(s)) {}
    std::mutex mutex;
    Session session;
  };

  ApiResponse products();
  ApiResponse create_session(const ApiRequest& request);
  ApiResponse session_status(const std::string& id);
  ApiResponse session_form(const std::string& id);
  ApiResponse submit(const std::string& id, const ApiRequest& request);
  ApiResponse export_session(const std::string& id, const ApiRequest& request);

  std::shared_ptr<Slot> find(const std::string& id) const;
  void persist(const Session& session) const;
  std::string new_session_id();

  std::shared_ptr<const Ontology> ontology_;
  std::filesystem::path data_dir_;
  mutable std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

// Blocking HTTP front end for a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds host:port; port 0 picks a free one. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Serves until stop(); returns false if the listener failed.
  bool listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Splits "host:port"; a bare port binds 127.0.0.1. Throws Error(InvalidInput).
std::pair<std::string, int> parse_bind_address(std::string_view text);

}  // namespace ontoform
