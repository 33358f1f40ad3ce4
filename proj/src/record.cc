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

#include "boop/record.h"

#include <fstream>

namespace boop {
namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw FormatError(path + ": " + what);
}

const Json& Field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) Fail(path + "." + key, "missing");
  return j[key];
}

Json PlayerToJson(const std::optional<AgentConfig>& a) {
  return a ? ToJson(*a) : Json("human");
}

std::optional<AgentConfig> PlayerFromJson(const Json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "human") return std::nullopt;
  if (!j.is_object()) Fail(path, "expected an agent object or \"human\"");
  return AgentFromJson(j, path, AgentConfig{});
}

Player ParsePlayerField(const Json& j, const std::string& path) {
  if (!j.is_string()) Fail(path, "expected \"P1\" or \"P2\"");
  const auto p = ParsePlayer(j.get<std::string>());
  if (!p) Fail(path, "expected \"P1\" or \"P2\"");
  return *p;
}

}  // namespace

Json RecordToJson(const GameRecord& r) {
  Json j;
  j["format"] = kRecordFormat;
  j["game_index"] = r.game_index;
  j["seed"] = r.seed;
  j["players"] = Json{{"P1", PlayerToJson(r.p1)}, {"P2", PlayerToJson(r.p2)}};
  Json actions = Json::array();
  for (const RecordedAction& a : r.actions) {
    Json entry;
    entry["player"] = ToString(a.player);
    if (const Move* m = std::get_if<Move>(&a.action)) {
      entry["move"] = m->ToString();
    } else {
      entry["decision"] = std::get<DecisionChoice>(a.action).ToString();
    }
    actions.push_back(std::move(entry));
  }
  j["actions"] = std::move(actions);
  j["winner"] = r.winner ? Json(ToString(*r.winner)) : Json(nullptr);
  j["plies"] = r.plies;
  j["anomaly"] = r.anomaly;
  return j;
}

GameRecord RecordFromJson(const Json& j) {
  const std::string root = "record";
  if (!j.is_object()) Fail(root, "expected an object");
  const Json& format = Field(j, "format", root);
  if (format != kRecordFormat) Fail(root + ".format", "unsupported format");

  GameRecord r;
  const Json& index = Field(j, "game_index", root);
  if (!index.is_number_integer()) Fail(root + ".game_index", "expected an integer");
  r.game_index = index.get<int>();
  const Json& seed = Field(j, "seed", root);
  if (!seed.is_number_integer()) Fail(root + ".seed", "expected an integer");
  r.seed = seed.get<std::uint64_t>();

  const Json& players = Field(j, "players", root);
  if (!players.is_object()) Fail(root + ".players", "expected an object");
  r.p1 = PlayerFromJson(Field(players, "P1", root + ".players"), root + ".players.P1");
  r.p2 = PlayerFromJson(Field(players, "P2", root + ".players"), root + ".players.P2");

  const Json& actions = Field(j, "actions", root);
  if (!actions.is_array()) Fail(root + ".actions", "expected an array");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const std::string path = root + ".actions[" + std::to_string(i) + "]";
    const Json& a = actions[i];
    if (!a.is_object()) Fail(path, "expected an object");
    RecordedAction act;
    act.player = ParsePlayerField(Field(a, "player", path), path + ".player");
    if (a.contains("move") == a.contains("decision")) {
      Fail(path, "expected exactly one of \"move\" or \"decision\"");
    }
    if (a.contains("move")) {
      const Json& text = a["move"];
      const auto m = text.is_string() ? Move::Parse(text.get<std::string>()) : std::nullopt;
      if (!m) Fail(path + ".move", "invalid move notation " + text.dump());
      act.action = *m;
    } else {
      const Json& text = a["decision"];
      const auto d =
          text.is_string() ? DecisionChoice::Parse(text.get<std::string>()) : std::nullopt;
      if (!d) Fail(path + ".decision", "invalid decision notation " + text.dump());
      act.action = *d;
    }
    r.actions.push_back(act);
  }

  const Json& winner = Field(j, "winner", root);
  if (!winner.is_null()) r.winner = ParsePlayerField(winner, root + ".winner");
  const Json& plies = Field(j, "plies", root);
  if (!plies.is_number_integer()) Fail(root + ".plies", "expected an integer");
  r.plies = plies.get<int>();
  const Json& anomaly = Field(j, "anomaly", root);
  if (!anomaly.is_boolean()) Fail(root + ".anomaly", "expected a boolean");
  r.anomaly = anomaly.get<bool>();
  return r;
}

std::string WriteRecord(const GameRecord& record) { return RecordToJson(record).dump(2) + "\n"; }

GameRecord ParseRecord(const std::string& text, const std::string& source) {
  const Json j = ParseJsonText(text, source);
  try {
    return RecordFromJson(j);
  } catch (const FormatError& e) {
    throw FormatError(source + ": " + e.what());
  }
}

void SaveRecord(const GameRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << WriteRecord(record);
}

GameRecord LoadRecord(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ParseRecord(text, path.string());
}

GameState ReplayRecord(const GameRecord& record) {
  GameState state = GameState::Initial();
  for (std::size_t i = 0; i < record.actions.size(); ++i) {
    const RecordedAction& a = record.actions[i];
    const int idx = static_cast<int>(i);
    const int ply = state.ply() + (std::holds_alternative<Move>(a.action) ? 1 : 0);
    auto fail = [&](const std::string& why) -> ReplayError {
      return ReplayError(idx, ply,
                         "action " + std::to_string(idx) + " (ply " + std::to_string(ply) +
                             "): " + why);
    };
    if (state.is_terminal()) throw fail("game already finished");
    if (a.player != state.to_move()) throw fail("expected " + ToString(state.to_move()) + " to act");
    try {
      if (const Move* m = std::get_if<Move>(&a.action)) {
        state = apply_move(state, *m);
      } else {
        state = resolve_decision(state, std::get<DecisionChoice>(a.action));
      }
    } catch (const RuleError& e) {
      throw fail(e.what());
    }
  }
  const int n = static_cast<int>(record.actions.size());
  if (state.ply() != record.plies) {
    throw ReplayError(n, state.ply(),
                      "replayed " + std::to_string(state.ply()) + " plies, record says " +
                          std::to_string(record.plies));
  }
  if (record.anomaly) {
    // Forfeit by the player to move at the cap.
    if (state.is_terminal() || record.winner != Opponent(state.to_move())) {
      throw ReplayError(n, state.ply(), "anomaly record does not end in a forfeit");
    }
  } else if (state.result() != record.winner) {
    throw ReplayError(n, state.ply(), "replayed result differs from recorded winner");
  }
  return state;
}

}  // namespace boop
