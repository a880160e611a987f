#pragma once

#include <memory>
#include <string>

#include "markgame/session.hpp"

namespace markgame {

/**
 * JSON over HTTP for a SessionManager:
 *   POST /sessions                    create (body: SessionConfig fields)
 *   GET  /sessions/{id}               state view
 *   POST /sessions/{id}/moves         {"object":"v:12"|"e:7", "ply"?: int}
 *   GET  /sessions/{id}/hint          suggested move for the human side
 *   GET  /sessions/{id}/transcript    replayable transcript
 * Errors are {"error": message, ...} with status 400, 404, 409 or 500.
 */
class HttpServer {
 public:
  explicit HttpServer(SessionManager& sessions, std::string cors_origin = "*");
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace markgame
