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

#include "boop/arena.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "test_util.h"

namespace boop {
namespace {

using namespace boop::testing;

AgentConfig Named(const char* name, int iterations = 20) {
  AgentConfig cfg = *AgentConfig::FromName(name);
  cfg.params.budget = Budget::Iterations(iterations);
  return cfg;
}

MatchSpec Spec(const char* a, const char* b, int games, int iterations = 20) {
  MatchSpec spec;
  spec.agent_a = Named(a);
  spec.agent_b = Named(b);
  spec.games = games;
  spec.budget = Budget::Iterations(iterations);
  spec.base_seed = 7;
  return spec;
}

// Strips wall-clock figures so results can be compared for equality.
Json Comparable(const MatchResult& r) {
  Json j = ResultToJson(r);
  j.erase("timing");
  return j;
}

std::filesystem::path TempDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("boop_arena_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST_CASE("seeding scheme") {
  CHECK(GameSeed(1, 0) == 1);
  CHECK(GameSeed(1, 41) == 42);
  CHECK(AgentSeed(5, Player::kOne) != AgentSeed(5, Player::kTwo));
  CHECK(AgentSeed(5, Player::kOne) != AgentSeed(6, Player::kOne));
  MatchSpec spec;
  CHECK(AgentAFirst(spec, 0));
  CHECK_FALSE(AgentAFirst(spec, 1));
  spec.seats = SeatPolicy::kFixed;
  CHECK(AgentAFirst(spec, 1));
}

TEST_CASE("match spec validation") {
  MatchSpec spec;
  CHECK_NOTHROW(spec.Validate());
  spec.games = 0;
  CHECK_THROWS_AS(spec.Validate(), std::invalid_argument);
  spec.games = 3;
  spec.jobs = 0;
  CHECK_THROWS_AS(spec.Validate(), std::invalid_argument);
  spec.jobs = 1;
  spec.agent_a.params.k = 0;
  CHECK_THROWS(spec.Validate());
}

TEST_CASE("single heuristic game is reproducible") {
  const MatchSpec spec = Spec("heuristic", "heuristic", 1);
  const MatchResult one = run_series(spec);
  const MatchResult two = run_series(spec);
  REQUIRE(one.records.size() == 1);
  CHECK(WriteRecord(one.records[0]) == WriteRecord(two.records[0]));
  CHECK(one.records[0].seed == 7);
  CHECK(one.played() == 1);
}

TEST_CASE("mirror series") {
  MatchSpec spec = Spec("vanilla", "vanilla", 12, 15);
  spec.jobs = 3;
  const MatchResult r = run_series(spec);
  CHECK_FALSE(r.aborted);
  CHECK(r.p1_seat_wins() + r.p2_seat_wins() == 12);
  CHECK(r.wins_a() + r.wins_b() == 12);
  CHECK(r.budget == "15it");
  REQUIRE(r.records.size() == 12);
  for (int i = 0; i < 12; ++i) {
    const GameRecord& rec = r.records[i];
    CHECK(rec.game_index == i);
    CHECK(rec.seed == GameSeed(7, i));
    CHECK(rec.winner.has_value());
    const GameState end = ReplayRecord(rec);
    CHECK(end.is_terminal() != rec.anomaly);
  }
}

TEST_CASE("seat fairness") {
  for (int games : {1, 4, 7}) {
    MatchSpec spec = Spec("heuristic", "mcts+S", games, 10);
    const MatchResult r = run_series(spec);
    int a_first = 0;
    for (const GameRecord& rec : r.records) {
      if (rec.p1->Name() == "heuristic") ++a_first;
    }
    CHECK(std::abs(a_first - (games - a_first)) <= 1);
    CHECK(r.played() == games);
  }
  MatchSpec fixed = Spec("heuristic", "mcts+S", 4, 10);
  fixed.seats = SeatPolicy::kFixed;
  for (const GameRecord& rec : run_series(fixed).records) CHECK(rec.p1->Name() == "heuristic");
}

TEST_CASE("series are reproducible regardless of job count") {
  MatchSpec spec = Spec("mcts+SEP", "vanilla", 6, 25);
  const MatchResult serial = run_series(spec);
  spec.jobs = 3;
  const MatchResult parallel = run_series(spec);
  CHECK(Comparable(serial) == Comparable(parallel));
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(WriteRecord(serial.records[i]) == WriteRecord(parallel.records[i]));
  }
}

TEST_CASE("progress callback sees every game") {
  const MatchSpec spec = Spec("heuristic", "heuristic", 5);
  int calls = 0, last = 0;
  run_series(spec, [&](int done, int total, const GameRecord&) {
    ++calls;
    last = done;
    CHECK(total == 5);
  });
  CHECK(calls == 5);
  CHECK(last == 5);
}

TEST_CASE("ply cap forfeits the player to move") {
  MatchSpec spec = Spec("heuristic", "heuristic", 2);
  spec.ply_cap = 3;
  const MatchResult r = run_series(spec);
  CHECK(r.anomalies == std::vector<int>{0, 1});
  for (const GameRecord& rec : r.records) {
    CHECK(rec.anomaly);
    CHECK(rec.plies == 3);
    CHECK(rec.winner == Player::kOne);  // P2 is to move after three plies
    CHECK_NOTHROW(ReplayRecord(rec));
  }
}

TEST_CASE("record round trip") {
  const MatchResult r = run_series(Spec("mcts+SEP", "heuristic", 3, 20));
  for (const GameRecord& rec : r.records) {
    const std::string text = WriteRecord(rec);
    CHECK(text.back() == '\n');
    const GameRecord back = ParseRecord(text);
    CHECK(back == rec);
    CHECK(WriteRecord(back) == text);
  }
  const auto dir = TempDir("records");
  SaveRecord(r.records[0], dir / "g.json");
  CHECK(LoadRecord(dir / "g.json") == r.records[0]);

  GameRecord human = r.records[0];
  human.p2.reset();
  const GameRecord back = ParseRecord(WriteRecord(human));
  CHECK_FALSE(back.p2.has_value());
  CHECK(RecordToJson(human)["players"]["P2"] == "human");
}

TEST_CASE("record decisions round trip") {
  // P1 completes a four-in-a-row and must pick which three to remove.
  GameRecord rec;
  rec.p1 = Named("heuristic");
  rec.p2 = Named("heuristic");
  const GameState s = Position({{"a1", P1, S}, {"b1", P1, S}, {"d1", P1, S}, {"e1", P2, S}}, P1);
  rec.actions.push_back({P1, Mv("S@c1")});
  GameState after = apply_move(s, Mv("S@c1"));
  REQUIRE(after.phase() == Phase::kAwaitingDecision);
  const auto choice = after.pending_choices().back();
  rec.actions.push_back({P1, choice});
  const GameRecord back = ParseRecord(WriteRecord(rec));
  CHECK(back == rec);
  CHECK(std::get<DecisionChoice>(back.actions[1].action) == choice);
}

TEST_CASE("replay errors") {
  GameRecord rec = run_series(Spec("heuristic", "heuristic", 1)).records[0];
  REQUIRE(rec.actions.size() > 4);

  SUBCASE("illegal move names the ply") {
    // Re-play the first move's square on the second ply, where it is occupied.
    rec.actions[1].action = std::get<Move>(rec.actions[0].action);
    try {
      ReplayRecord(rec);
      FAIL("expected a replay error");
    } catch (const ReplayError& e) {
      CHECK(e.action_index() == 1);
      CHECK(e.ply() == 2);  // plies are numbered from 1
      CHECK(std::string(e.what()).find("ply 2") != std::string::npos);
    }
  }
  SUBCASE("wrong player") {
    rec.actions[0].player = P2;
    CHECK_THROWS_AS(ReplayRecord(rec), ReplayError);
  }
  SUBCASE("wrong winner") {
    rec.winner = Opponent(*rec.winner);
    CHECK_THROWS_AS(ReplayRecord(rec), ReplayError);
  }
  SUBCASE("missing actions") {
    rec.actions.pop_back();
    CHECK_THROWS_AS(ReplayRecord(rec), ReplayError);
  }
}

TEST_CASE("malformed record files") {
  const GameRecord rec = run_series(Spec("heuristic", "heuristic", 1)).records[0];
  const std::string text = WriteRecord(rec);

  SUBCASE("truncated") {
    try {
      ParseRecord(text.substr(0, text.size() / 2), "g.json");
      FAIL("expected a parse error");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).rfind("g.json:", 0) == 0);
      CHECK(std::string(e.what()).find("malformed JSON") != std::string::npos);
    }
  }
  SUBCASE("wrong format tag") {
    Json j = RecordToJson(rec);
    j["format"] = "boop-record/9";
    CHECK_THROWS_AS(RecordFromJson(j), FormatError);
  }
  SUBCASE("bad move notation names the field") {
    Json j = RecordToJson(rec);
    j["actions"][2]["move"] = "X@z9";
    try {
      RecordFromJson(j);
      FAIL("expected a parse error");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("actions[2]") != std::string::npos);
    }
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(LoadRecord("/nonexistent/boop.json"), FormatError);
  }
}

TEST_CASE("result json round trip and saved layout") {
  const MatchResult r = run_series(Spec("heuristic", "mcts+S", 4, 10));
  const MatchResult back = ResultFromJson(ResultToJson(r), "result");
  CHECK(back.name_a == r.name_a);
  CHECK(back.a_wins_as_p1 == r.a_wins_as_p1);
  CHECK(back.b_wins_as_p2 == r.b_wins_as_p2);
  CHECK(back.budget == "10it");
  CHECK(back.base_seed == 7);

  const auto dir = TempDir("save");
  SaveResult(r, dir);
  CHECK(std::filesystem::exists(dir / "result.json"));
  CHECK(std::filesystem::exists(dir / "timing.json"));
  for (int i = 0; i < 4; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "game_%04d.json", i);
    CHECK(LoadRecord(dir / "games" / name) == r.records[i]);
  }
}

TEST_CASE("summary table") {
  MatchResult table1;
  table1.name_a = "mcts+SEP";
  table1.name_b = "vanilla";
  table1.games = 100;
  table1.a_wins_as_p1 = 47;
  table1.a_wins_as_p2 = 49;
  table1.b_wins_as_p1 = 1;
  table1.b_wins_as_p2 = 3;

  MatchResult zero = table1;
  zero.name_b = "mcts+SEP";
  zero.a_wins_as_p1 = zero.a_wins_as_p2 = 0;
  zero.b_wins_as_p1 = zero.b_wins_as_p2 = 50;

  MatchResult mirror;
  mirror.name_a = mirror.name_b = "mcts+SEP";
  mirror.games = 100;
  mirror.a_wins_as_p1 = 4;
  mirror.b_wins_as_p1 = 3;
  mirror.a_wins_as_p2 = 46;
  mirror.b_wins_as_p2 = 47;

  const auto rows = summarize({table1, zero, mirror});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].a_wins_as_p1 == 47);
  CHECK(rows[0].a_wins_as_p2 == 49);
  CHECK(FormatPercent(rows[0].win_rate) == "96%");
  CHECK(FormatPercent(rows[1].win_rate) == "0%");
  CHECK(rows[2].p1_seat_wins == 7);
  CHECK(rows[2].p2_seat_wins == 93);
  CHECK(FormatPercent(17.0 / 30) == "56.7%");

  const std::string text = RenderText(rows);
  CHECK(text.find("96%") != std::string::npos);
  const std::string csv = RenderCsv(rows);
  CHECK(csv.find("mcts+SEP,vanilla,47,49") != std::string::npos);
  CHECK(csv.find(",7,93,") != std::string::npos);
  const Json j = RenderJson(rows);
  CHECK(j.size() == 3);
  CHECK(j[2]["p2_seat_wins"] == 93);

  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("match configuration documents") {
  const Json doc = ParseJsonText(R"({
    "weights": {"count": 2},
    "params": {"k": 10, "m": 3},
    "match": {
      "a": "mcts+SEP",
      "b": {"agent": "mcts+P", "params": {"k": 5}},
      "games": 8, "seats": "fixed", "seed": 99,
      "budget": {"iterations": 40}, "jobs": 2, "ply_cap": 500
    }
  })", "cfg");
  const MatchSpec spec = MatchSpecFromJson(doc, "cfg");
  CHECK(spec.agent_a.Name() == "mcts+SEP");
  CHECK(spec.agent_a.weights.count == 2);
  CHECK(spec.agent_a.params.k == 10);
  CHECK(spec.agent_a.params.m == 3);
  CHECK(spec.agent_b.Name() == "mcts+P");
  CHECK(spec.agent_b.params.k == 5);
  CHECK(spec.agent_b.params.m == 3);
  CHECK(spec.agent_b.weights.count == 2);
  CHECK(spec.games == 8);
  CHECK(spec.seats == SeatPolicy::kFixed);
  CHECK(spec.base_seed == 99);
  CHECK(spec.budget == Budget::Iterations(40));
  CHECK(spec.jobs == 2);
  CHECK(spec.ply_cap == 500);

  auto error_of = [](const std::string& text) {
    try {
      MatchSpecFromJson(ParseJsonText(text, "cfg"), "cfg");
    } catch (const FormatError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of(R"({"match": {"games": "ten"}})").find("cfg.match.games") != std::string::npos);
  CHECK(error_of(R"({"match": {"a": "alphazero"}})").find("cfg.match.a") != std::string::npos);
  CHECK(error_of(R"({"match": {"seats": "random"}})").find("seats") != std::string::npos);
  CHECK(error_of(R"({"params": {"discount": 0}})").find("cfg.params") != std::string::npos);
  CHECK(error_of(R"({"colour": 1})").find("cfg.colour") != std::string::npos);
  CHECK(error_of(R"({"match": {"budget": {"ms": 1, "iterations": 2}}})").find("budget") !=
        std::string::npos);
  try {
    ParseJsonText("{\n  \"match\": \n}", "cfg");
    FAIL("expected a parse error");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("cfg:3") != std::string::npos);
  }
}

}  // namespace
}  // namespace boop
