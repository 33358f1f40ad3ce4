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

#include "boop/service.h"

#include <filesystem>
#include <random>
#include <thread>

#include "boop/http_api.h"
#include "doctest.h"
#include "httplib.h"
#include "test_util.h"

namespace boop {
namespace {

using namespace boop::testing;
using namespace std::chrono_literals;

AgentConfig Heuristic() { return *AgentConfig::FromName("heuristic"); }

AgentConfig Searcher(int iterations) {
  AgentConfig cfg = *AgentConfig::FromName("mcts+SEP");
  cfg.params.budget = Budget::Iterations(iterations);
  return cfg;
}

SessionError::Kind ErrorKind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const SessionError& e) {
    return e.kind();
  }
  FAIL("expected a session error");
  return SessionError::Kind::kBadRequest;
}

TEST_CASE("new sessions") {
  SessionManager sessions;
  SUBCASE("human first") {
    const std::string id = sessions.create_session(Heuristic(), P1);
    const auto snap = sessions.get_state(id);
    CHECK(snap.status == SessionStatus::kAwaitingHuman);
    const Json view = SessionView(snap);
    CHECK(view["status"] == "awaiting_human");
    CHECK(view["legal_moves"].size() == 36);
    CHECK(view["board"].size() == 6);
    CHECK(view["board"][0].size() == 6);
    CHECK(view["pools"]["P1"]["small"] == 8);
    CHECK(view["history"].empty());
    CHECK(view["thinking"] == false);
  }
  SUBCASE("agent first") {
    const std::string id = sessions.create_session(Heuristic(), P2);
    const auto snap = sessions.wait_idle(id, 5s);
    CHECK(snap.status == SessionStatus::kAwaitingHuman);
    REQUIRE(snap.history.size() == 1);
    CHECK(snap.history[0].player == P1);
    CHECK(snap.state.ply() == 1);
    CHECK(SessionView(snap)["legal_moves"].size() == 35);
  }
  SUBCASE("bad requests") {
    CHECK(ErrorKind([&] { sessions.create_session(Json{{"agent", "alphazero"}}); }) ==
          SessionError::Kind::kBadRequest);
    CHECK(ErrorKind([&] {
            sessions.create_session(Json{{"agent", "vanilla"}, {"human_seat", "P3"}});
          }) == SessionError::Kind::kBadRequest);
    CHECK(ErrorKind([&] {
            sessions.create_session(Json{{"agent", "vanilla"}, {"budget_ms", 0}});
          }) == SessionError::Kind::kBadRequest);
    CHECK(ErrorKind([&] { sessions.create_session(Json{{"colour", "red"}}); }) ==
          SessionError::Kind::kBadRequest);
    CHECK(sessions.size() == 0);
  }
  SUBCASE("json request") {
    const std::string id =
        sessions.create_session(Json{{"agent", "mcts+SEP"}, {"human_seat", "P1"},
                                     {"budget_ms", 20}});
    const auto snap = sessions.get_state(id);
    CHECK(snap.agent.Name() == "mcts+SEP");
    CHECK(snap.agent.params.budget == Budget::Millis(20));
    CHECK(sessions.size() == 1);
  }
}

TEST_CASE("human actions") {
  SessionManager sessions;
  const std::string id = sessions.create_session(Heuristic(), P1);

  CHECK(ErrorKind([&] { sessions.get_state("nope"); }) == SessionError::Kind::kNotFound);
  CHECK(ErrorKind([&] { sessions.submit_human_action("nope", Mv("S@c3")); }) ==
        SessionError::Kind::kNotFound);
  CHECK(ErrorKind([&] {
          sessions.submit_human_action(id, DecisionChoice::Graduate(Sq("a1")));
        }) == SessionError::Kind::kIllegal);
  CHECK(ErrorKind([&] { sessions.submit_human_action(id, Mv("L@c3")); }) ==
        SessionError::Kind::kIllegal);

  sessions.submit_human_action(id, Mv("S@c3"));
  const auto snap = sessions.wait_idle(id, 5s);
  REQUIRE(snap.history.size() == 2);
  CHECK(snap.history[0] == RecordedAction{P1, Mv("S@c3")});
  CHECK(snap.history[1].player == P2);

  // The square is still held by P1's piece unless it was booped away.
  if (!snap.state.board().IsEmpty(Sq("c3"))) {
    CHECK(ErrorKind([&] { sessions.submit_human_action(id, Mv("S@c3")); }) ==
          SessionError::Kind::kIllegal);
  }
}

TEST_CASE("actions while the agent thinks are rejected") {
  SessionManager sessions;
  AgentConfig slow = *AgentConfig::FromName("mcts+SEP");
  slow.params.budget = Budget::Millis(300);
  const std::string id = sessions.create_session(slow, P2);
  const auto snap = sessions.get_state(id);
  CHECK(snap.status == SessionStatus::kAgentThinking);
  CHECK(SessionView(snap)["thinking"] == true);
  CHECK(SessionView(snap)["legal_moves"].empty());
  CHECK(ErrorKind([&] { sessions.submit_human_action(id, Mv("S@a1")); }) ==
        SessionError::Kind::kNotYourTurn);
  CHECK(sessions.wait_idle(id, 5s).status == SessionStatus::kAwaitingHuman);
}

TEST_CASE("pending decisions are offered to the human") {
  SessionSnapshot snap;
  snap.id = "x";
  snap.human_seat = P1;
  snap.agent = Heuristic();
  const GameState s = Position({{"a1", P1, S}, {"b1", P1, S}, {"d1", P1, S}, {"e1", P2, S}}, P1);
  snap.state = apply_move(s, Mv("S@c1"));
  snap.status = SessionStatus::kAwaitingHumanDecision;
  snap.history = {{P1, Mv("S@c1")}};
  const Json view = SessionView(snap);
  CHECK(view["status"] == "awaiting_human_decision");
  CHECK(view["phase"] == "decision");
  CHECK(view["pending_choices"] == Json::array({"remove:a1,b1,c1", "remove:b1,c1,d1"}));
  CHECK(view["legal_moves"].empty());
  CHECK(view["board"][0][2] == Json{{"owner", "P1"}, {"kind", "S"}});
  CHECK(view["board"][5][5].is_null());
  CHECK(view["history"][0] == Json{{"player", "P1"}, {"move", "S@c1"}});
}

// Plays the human seat by sampling a random legal action from the view.
class ScriptedClient {
 public:
  ScriptedClient(int port, std::uint64_t seed) : client_("127.0.0.1", port), rng_(seed) {
    client_.set_read_timeout(30, 0);
  }

  Json Call(const std::string& method, const std::string& path, const Json& body, int expect) {
    httplib::Result res = method == "GET" ? client_.Get(path)
                                          : client_.Post(path, body.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == expect);
    return Json::parse(res->body);
  }

  Json PlayToEnd(const std::string& id, int* decisions) {
    Json view = Call("GET", "/sessions/" + id + "?wait_ms=10000", nullptr, 200);
    for (int guard = 0; guard < 2000 && view["status"] != "finished"; ++guard) {
      if (view["status"] == "agent_thinking") {
        view = Call("GET", "/sessions/" + id + "?wait_ms=10000", nullptr, 200);
      } else if (view["status"] == "awaiting_human_decision") {
        ++*decisions;
        view = Call("POST", "/sessions/" + id + "/decision",
                    Json{{"decision", Pick(view["pending_choices"])}}, 200);
      } else {
        view = Call("POST", "/sessions/" + id + "/move", Json{{"move", Pick(view["legal_moves"])}},
                    200);
      }
    }
    return view;
  }

 private:
  std::string Pick(const Json& options) {
    REQUIRE_FALSE(options.empty());
    return options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng_)];
  }

  httplib::Client client_;
  std::mt19937_64 rng_;
};

class TestServer {
 public:
  explicit TestServer(SessionManager& sessions) {
    MountApi(server_, sessions);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() {
    server_.stop();
    thread_.join();
  }
  int port() const { return port_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_CASE("http api error surface") {
  SessionManager sessions;
  TestServer server(sessions);
  ScriptedClient c(server.port(), 1);

  const Json created = c.Call("POST", "/sessions", Json{{"agent", "heuristic"}}, 201);
  const std::string id = created["id"];
  CHECK(created["status"] == "awaiting_human");
  CHECK(created["human_seat"] == "P1");

  c.Call("GET", "/sessions/unknown", nullptr, 404);
  c.Call("POST", "/sessions", Json{{"agent", "nope"}}, 400);
  c.Call("POST", "/sessions/" + id + "/move", Json{{"move", "Q@z9"}}, 400);
  c.Call("POST", "/sessions/" + id + "/move", Json{{"mv", "S@a1"}}, 400);
  c.Call("POST", "/sessions/" + id + "/move", Json{{"move", "L@a1"}}, 422);
  c.Call("POST", "/sessions/" + id + "/decision", Json{{"decision", "graduate:a1"}}, 422);
  const Json err = c.Call("GET", "/sessions/" + id + "?wait_ms=abc", nullptr, 400);
  CHECK(err.contains("error"));

  httplib::Client raw("127.0.0.1", server.port());
  const auto bad = raw.Post("/sessions", "{not json", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
}

TEST_CASE("http api rejects moves while the agent thinks") {
  SessionManager sessions;
  TestServer server(sessions);
  ScriptedClient c(server.port(), 2);
  const Json created = c.Call(
      "POST", "/sessions", Json{{"agent", "mcts+SEP"}, {"human_seat", "P2"}, {"budget_ms", 300}},
      201);
  CHECK(created["status"] == "agent_thinking");
  c.Call("POST", "/sessions/" + created["id"].get<std::string>() + "/move",
         Json{{"move", "S@a1"}}, 409);
}

TEST_CASE("scripted games through the http api") {
  const auto dir = std::filesystem::temp_directory_path() / "boop_service_test_records";
  std::filesystem::remove_all(dir);
  int decisions = 0;
  {
    SessionManager sessions(dir);
    TestServer server(sessions);
    for (const char* seat : {"P1", "P2"}) {
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        ScriptedClient c(server.port(), seed);
        const Json created =
            c.Call("POST", "/sessions",
                   Json{{"agent", Json{{"agent", "mcts+SEP"},
                                       {"seed", seed},
                                       {"params", {{"budget", {{"iterations", 30}}}}}}},
                        {"human_seat", seat}},
                   201);
        const std::string id = created["id"];
        const Json end = c.PlayToEnd(id, &decisions);
        REQUIRE(end["status"] == "finished");
        CHECK((end["winner"] == "P1" || end["winner"] == "P2"));
        CHECK(end["legal_moves"].empty());
        c.Call("POST", "/sessions/" + id + "/move", Json{{"move", "S@a1"}}, 409);

        httplib::Client raw("127.0.0.1", server.port());
        const auto res = raw.Get("/sessions/" + id + "/record");
        REQUIRE(res);
        REQUIRE(res->status == 200);
        const GameRecord rec = ParseRecord(res->body);
        CHECK(ReplayRecord(rec).result() == ParsePlayer(end["winner"].get<std::string>()));
        CHECK(rec.actions.size() == end["history"].size());
        CHECK((seat == std::string("P1") ? !rec.p1 && rec.p2 : rec.p1 && !rec.p2));
      }
    }
  }
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    CHECK_NOTHROW(ReplayRecord(LoadRecord(entry.path())));
    ++files;
  }
  CHECK(files == 8);
  MESSAGE("human removal/graduation decisions seen: " << decisions);
}

}  // namespace
}  // namespace boop
