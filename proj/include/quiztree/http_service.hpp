#pragma once

#include <chrono>
#include <string>

#include <httplib.h>
#include "quiztree/io/json.hpp"
#include "quiztree/session.hpp"

namespace quiztree {

struct ServiceOptions {
  std::string allow_origin = "*";
  std::chrono::seconds ttl = std::chrono::hours(1);
};

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::WrongState:
    case ErrorCode::InconsistentAnswers: return 409;
    default: return 400;
  }
}

/// JSON API over a SessionStore:
///   POST /api/session                 {distribution, strategy}
///   POST /api/session/{id}/answer     {answer: bool}
///   GET  /api/session/{id}
///   GET  /api/meta/strategies
class HttpService {
 public:
  explicit HttpService(ServiceOptions opts = {}) : opts_(std::move(opts)), store_(opts_.ttl) { routes(); }

  httplib::Server& server() { return server_; }
  SessionStore& store() { return store_; }

  bool listen(const std::string& host, int port) { return server_.listen(host, port); }
  int bind_to_any_port(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  static void reply(httplib::Response& res, int status, const io::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void reply_error(httplib::Response& res, ErrorCode code, const std::string& message) {
    reply(res, http_status(code), io::json{{"error", std::string(to_string(code))}, {"message", message}});
  }

  template <typename F>
  static void guarded(httplib::Response& res, F&& body) {
    try {
      body();
    } catch (const Error& e) {
      reply_error(res, e.code(), e.what());
    } catch (const io::json::exception& e) {
      reply_error(res, ErrorCode::PreconditionViolated, std::string("bad JSON: ") + e.what());
    }
  }

  static io::json parse_body(const httplib::Request& req) {
    try {
      return io::json::parse(req.body);
    } catch (const io::json::exception& e) {
      fail(ErrorCode::PreconditionViolated, std::string("request body is not JSON: ") + e.what());
    }
  }

  void routes() {
    server_.set_default_headers({{"Access-Control-Allow-Origin", opts_.allow_origin},
                                 {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                 {"Access-Control-Allow-Headers", "Content-Type"}});
    server_.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server_.Get("/api/meta/strategies", [](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, io::json{{"strategies", strategy_catalog()}});
    });

    server_.Post("/api/session", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto body = parse_body(req);
        require(body.is_object() && body.contains("distribution"), ErrorCode::BadDistribution,
                "request needs a distribution");
        auto dist = io::parse_distribution(body.at("distribution"));
        auto spec = parse_strategy(body.value("strategy", io::json("huffman")));
        auto session = store_.create(std::move(dist), std::move(spec));
        reply(res, 201, session->state());
      });
    });

    server_.Post(R"(/api/session/([^/]+)/answer)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto session = store_.get(req.matches[1]);
        const auto body = parse_body(req);
        require(body.is_object() && body.contains("answer") && body.at("answer").is_boolean(),
                ErrorCode::PreconditionViolated, "request needs {\"answer\": true|false}");
        reply(res, 200, session->answer(body.at("answer").get<bool>()));
      });
    });

    server_.Get(R"(/api/session/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { reply(res, 200, store_.get(req.matches[1])->state()); });
    });

    server_.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        res.set_content(io::json{{"error", res.status == 404 ? "NotFound" : "HttpError"}, {"status", res.status}}.dump(),
                        "application/json");
      }
    });
  }

  ServiceOptions opts_;
  SessionStore store_;
  httplib::Server server_;
};

}  // namespace quiztree
