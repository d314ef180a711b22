#pragma once

#include <memory>
#include <string>

#include "floorgraph/service.hpp"

namespace floorgraph {

/// JSON-over-HTTP front end for a DesignService, rooted at /api/v1.
class HttpServer {
 public:
  explicit HttpServer(DesignService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Blocks until stop() is called. Returns false if the socket could not be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (negative on failure).
  int bind_to_any_port(const std::string& host);
  /// Serves on a socket bound by bind_to_any_port; blocks until stop().
  bool listen_after_bind();
  void stop();
  bool is_running() const;
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace floorgraph
