#include "markgame/http_server.hpp"

#include <httplib.h>

namespace markgame {

using nlohmann::json;

struct HttpServer::Impl {
  SessionManager& sessions;
  std::string origin;
  httplib::Server server;

  Impl(SessionManager& s, std::string o) : sessions(s), origin(std::move(o)) {}

  static void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  template <class F>
  void guarded(httplib::Response& res, F&& f) {
    try {
      send(res, 200, f());
    } catch (const ServiceError& e) {
      json body = {{"error", e.what()}, {"status", e.status}};
      if (e.detail.is_object())
        for (auto it = e.detail.begin(); it != e.detail.end(); ++it) body[it.key()] = it.value();
      send(res, e.status, body);
    } catch (const json::exception& e) {
      send(res, 400, {{"error", std::string("malformed JSON: ") + e.what()}, {"status", 400}});
    } catch (const std::exception& e) {
      send(res, 500, {{"error", e.what()}, {"status", 500}});
    }
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { return json{{"service", "markgame"}, {"sessions", sessions.size()}}; });
    });
    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = req.body.empty() ? json::object() : json::parse(req.body);
        return sessions.create(SessionConfig::from_json(body));
      });
    });
    server.Get(R"(/sessions/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return sessions.get(req.matches[1]); });
    });
    server.Post(R"(/sessions/([0-9a-f]+)/moves)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = json::parse(req.body);
        if (!body.is_object() || !body.contains("object") || !body["object"].is_string())
          throw ServiceError(400, "body must be {\"object\": \"v:<id>\" | \"e:<id>\"}");
        std::optional<int> ply;
        if (body.contains("ply") && !body["ply"].is_null()) ply = body["ply"].get<int>();
        return sessions.submit(req.matches[1], body["object"].get<std::string>(), ply);
      });
    });
    server.Get(R"(/sessions/([0-9a-f]+)/hint)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return sessions.hint(req.matches[1]); });
    });
    server.Get(R"(/sessions/([0-9a-f]+)/transcript)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return sessions.transcript(req.matches[1]); });
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) send(res, res.status, {{"error", "not found"}, {"status", res.status}});
    });
  }
};

HttpServer::HttpServer(SessionManager& sessions, std::string cors_origin)
    : impl_(std::make_unique<Impl>(sessions, std::move(cors_origin))) {
  impl_->routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace markgame
