/*
 * Copyright 2026 The ALTL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "altl/http_api.hpp"

#include <string>

#include "altl/config.hpp"
#include "httplib.h"
#include "json.hpp"

namespace altl {
namespace {

using Json = nlohmann::json;

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  reply(res, http_status(code),
        Json{{"error", {{"code", std::string(error_code_name(code))}, {"message", message}}}});
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("request body is not valid JSON: ") + e.what());
  }
}

Json status_json(const SessionStatus& s) {
  return Json{{"id", s.id},
              {"state", std::string(session_state_name(s.state))},
              {"n_labeled", s.n_labeled},
              {"n_unlabeled", s.n_unlabeled},
              {"round", s.round},
              {"vocabulary_size", s.vocabulary_size},
              {"pending", s.pending},
              {"has_model", s.has_model},
              {"last_error", s.last_error ? Json(*s.last_error) : Json(nullptr)}};
}

// Runs `body`, turning library and JSON errors into error responses.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    reply_error(res, e.code(), e.what());
  } catch (const Json::exception& e) {
    reply_error(res, ErrorCode::kInvalidArgument, e.what());
  } catch (const std::exception& e) {
    reply_error(res, ErrorCode::kInternal, e.what());
  }
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kFailedPrecondition:
    case ErrorCode::kAlreadyExists:
      return 409;
    case ErrorCode::kInternal:
      return 500;
  }
  return 500;
}

struct HttpApi::Impl {
  explicit Impl(SessionManager& m) : manager(m) {}
  SessionManager& manager;
  httplib::Server server;
};

HttpApi::HttpApi(SessionManager& manager) : impl_(std::make_unique<Impl>(manager)) {
  auto& server = impl_->server;
  auto& sessions = impl_->manager;

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  server.Get("/v1/sessions", [&sessions](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, Json{{"sessions", sessions.ids()}}); });
  });

  server.Post("/v1/sessions", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Json body = parse_body(req);
      const auto session = sessions.create(session_config_from_json(body));
      reply(res, 201, status_json(session->status()));
    });
  });

  server.Get(R"(/v1/sessions/([^/]+))", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, status_json(sessions.get(req.matches[1])->status())); });
  });

  server.Get(R"(/v1/sessions/([^/]+)/batch)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto session = sessions.get(req.matches[1]);
      Json items = Json::array();
      for (const auto& item : session->batch()) {
        Json scores = Json::array();
        for (const auto& [label, score] : item.scores) scores.push_back({{"label", label}, {"score", score}});
        items.push_back({{"id", item.id},
                         {"text", item.text ? Json(*item.text) : Json(nullptr)},
                         {"scores", std::move(scores)}});
      }
      reply(res, 200, Json{{"items", std::move(items)}});
    });
  });

  server.Post(R"(/v1/sessions/([^/]+)/labels)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto session = sessions.get(req.matches[1]);
      const Json body = parse_body(req);
      if (!body.is_object() || !body.contains("labels") || !body["labels"].is_object()) {
        fail(ErrorCode::kInvalidArgument, "expected {\"labels\": {id: [label, ...]}}");
      }
      const auto assignments = body["labels"].get<std::map<std::string, std::vector<std::string>>>();
      const bool create_missing = body.value("create_missing", false);
      const std::size_t accepted = session->submit_labels(assignments, create_missing);
      const SessionStatus s = session->status();
      reply(res, 200,
            Json{{"accepted", accepted},
                 {"remaining", s.pending.size()},
                 {"state", std::string(session_state_name(s.state))}});
    });
  });

  server.Post(R"(/v1/sessions/([^/]+)/retrain)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto session = sessions.get(req.matches[1]);
      session->retrain();
      reply(res, 202, status_json(session->status()));
    });
  });

  server.Get(R"(/v1/sessions/([^/]+)/metrics)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      Json records = Json::array();
      for (const auto& r : sessions.get(req.matches[1])->metrics()) records.push_back(to_json(r));
      reply(res, 200, Json{{"records", std::move(records)}});
    });
  });

  server.Get(R"(/v1/sessions/([^/]+)/projection)",
             [&sessions](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 Json points = Json::array();
                 for (const auto& p : sessions.get(req.matches[1])->projection()) {
                   points.push_back({{"id", p.id},
                                     {"x", p.x},
                                     {"y", p.y},
                                     {"cluster", p.cluster},
                                     {"labeled", p.labeled},
                                     {"in_batch", p.in_batch}});
                 }
                 reply(res, 200, Json{{"points", std::move(points)}});
               });
             });

  server.Get(R"(/v1/sessions/([^/]+)/labels-vocab)",
             [&sessions](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] { reply(res, 200, Json{{"labels", sessions.get(req.matches[1])->vocabulary()}}); });
             });

  server.Post(R"(/v1/sessions/([^/]+)/labels-vocab)",
              [&sessions](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  const auto session = sessions.get(req.matches[1]);
                  const Json body = parse_body(req);
                  if (!body.is_object() || !body.contains("name") || !body["name"].is_string()) {
                    fail(ErrorCode::kInvalidArgument, "expected {\"name\": string}");
                  }
                  const std::size_t index = session->add_label(body["name"].get<std::string>());
                  reply(res, 201, Json{{"index", index}, {"labels", session->vocabulary()}});
                });
              });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      reply_error(res, res.status == 404 ? ErrorCode::kNotFound : ErrorCode::kInvalidArgument,
                  "no route for this request");
    }
  });
}

HttpApi::~HttpApi() { stop(); }

int HttpApi::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpApi::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }

bool HttpApi::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpApi::stop() { impl_->server.stop(); }

}  // namespace altl
