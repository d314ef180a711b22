#include "floorgraph/http_server.hpp"

#include <httplib.h>

#include <functional>

namespace floorgraph {

namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, const Error& e) {
  res.status = http_status(e.code());
  res.set_content(error_body(e).dump(), kJson);
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json j = Json::parse(req.body, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::Format, "request body is not valid JSON");
  return j;
}

// Runs a handler and turns every failure into a structured error response.
void guarded(httplib::Response& res, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    send_error(res, e);
  } catch (const nlohmann::json::exception& e) {
    send_error(res, Error(ErrorCode::Format, e.what()));
  } catch (const std::exception& e) {
    res.status = 500;
    res.set_content(Json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump(), kJson);
  }
}

}  // namespace

struct HttpServer::Impl {
  DesignService& service;
  httplib::Server server;

  explicit Impl(DesignService& s) : service(s) { routes(); }

  using SessionCall = Json (DesignService::*)(const std::string&, const Json&);

  void post_action(const std::string& action, SessionCall call) {
    server.Post("/api/v1/sessions/([^/]+)/" + action, [this, call](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const Json out = (service.*call)(req.matches[1].str(), parse_body(req));
        res.set_content(out.dump(), kJson);
      });
    });
  }

  void routes() {
    server.Get("/api/v1/health", [this](const httplib::Request&, httplib::Response& res) {
      const Json out = {{"status", "ok"}, {"records", service.corpus().size()}, {"sessions", service.session_count()}};
      res.set_content(out.dump(), kJson);
    });
    server.Post("/api/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const Json out = service.create_session(parse_body(req));
        res.status = 201;
        res.set_content(out.dump(), kJson);
      });
    });
    server.Get("/api/v1/sessions/([^/]+)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { res.set_content(service.get_session(req.matches[1].str()).dump(), kJson); });
    });
    server.Delete("/api/v1/sessions/([^/]+)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        service.delete_session(req.matches[1].str());
        res.status = 204;
      });
    });
    post_action("retrieve", &DesignService::retrieve);
    post_action("transfer", &DesignService::transfer);
    post_action("edit", &DesignService::edit);
    post_action("generate", &DesignService::generate);
    server.Get("/api/v1/sessions/([^/]+)/export", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
        const std::string body = service.export_plan(req.matches[1].str(), format);
        res.set_content(body, format == "svg" ? "image/svg+xml" : kJson);
      });
    });
  }
};

HttpServer::HttpServer(DesignService& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int HttpServer::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }
void HttpServer::stop() { impl_->server.stop(); }
bool HttpServer::is_running() const { return impl_->server.is_running(); }
void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace floorgraph
