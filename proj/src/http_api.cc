// Copyright 2026 The boop-co Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "boop/http_api.h"

#include <algorithm>

namespace boop {
namespace {

constexpr const char* kJson = "application/json";
constexpr int kMaxWaitMs = 30000;

void Reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

int StatusFor(SessionError::Kind kind) {
  switch (kind) {
    case SessionError::Kind::kNotFound:
      return 404;
    case SessionError::Kind::kBadRequest:
      return 400;
    case SessionError::Kind::kNotYourTurn:
      return 409;
    case SessionError::Kind::kIllegal:
      return 422;
  }
  return 500;
}

template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const SessionError& e) {
    Reply(res, StatusFor(e.kind()), Json{{"error", e.what()}});
  } catch (const FormatError& e) {
    Reply(res, 400, Json{{"error", e.what()}});
  }
}

Json ParseBody(const httplib::Request& req) {
  try {
    return ParseJsonText(req.body, "body");
  } catch (const FormatError& e) {
    throw SessionError(SessionError::Kind::kBadRequest, e.what());
  }
}

std::string BodyString(const Json& body, const char* key) {
  if (!body.is_object() || !body.contains(key) || !body[key].is_string()) {
    throw SessionError(SessionError::Kind::kBadRequest,
                       std::string("body.") + key + ": expected a string");
  }
  return body[key].get<std::string>();
}

}  // namespace

void MountApi(httplib::Server& server, SessionManager& sessions) {
  server.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const std::string id = sessions.create_session(ParseBody(req));
      Reply(res, 201, SessionView(sessions.get_state(id)));
    });
  });

  server.Get(R"(/sessions/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const std::string id = req.matches[1];
      if (req.has_param("wait_ms")) {
        int ms = 0;
        try {
          ms = std::stoi(req.get_param_value("wait_ms"));
        } catch (const std::exception&) {
          throw SessionError(SessionError::Kind::kBadRequest, "wait_ms: expected an integer");
        }
        ms = std::clamp(ms, 0, kMaxWaitMs);
        Reply(res, 200, SessionView(sessions.wait_idle(id, std::chrono::milliseconds(ms))));
        return;
      }
      Reply(res, 200, SessionView(sessions.get_state(id)));
    });
  });

  server.Post(R"(/sessions/([^/]+)/move)",
              [&](const httplib::Request& req, httplib::Response& res) {
                Guarded(res, [&] {
                  const std::string text = BodyString(ParseBody(req), "move");
                  const auto move = Move::Parse(text);
                  if (!move) {
                    throw SessionError(SessionError::Kind::kBadRequest,
                                       "body.move: invalid notation '" + text + "'");
                  }
                  Reply(res, 200,
                        SessionView(sessions.submit_human_action(req.matches[1], *move)));
                });
              });

  server.Post(R"(/sessions/([^/]+)/decision)",
              [&](const httplib::Request& req, httplib::Response& res) {
                Guarded(res, [&] {
                  const std::string text = BodyString(ParseBody(req), "decision");
                  const auto choice = DecisionChoice::Parse(text);
                  if (!choice) {
                    throw SessionError(SessionError::Kind::kBadRequest,
                                       "body.decision: invalid notation '" + text + "'");
                  }
                  Reply(res, 200,
                        SessionView(sessions.submit_human_action(req.matches[1], *choice)));
                });
              });

  server.Get(R"(/sessions/([^/]+)/record)",
             [&](const httplib::Request& req, httplib::Response& res) {
               Guarded(res, [&] {
                 res.status = 200;
                 res.set_content(WriteRecord(sessions.record(req.matches[1])), kJson);
               });
             });
}

}  // namespace boop
