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

#ifndef BOOP_RECORD_H_
#define BOOP_RECORD_H_

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "boop/config.h"
#include "boop/engine.h"
#include "boop/search.h"

namespace boop {

// One half-move or one decision resolution, in play order.
struct RecordedAction {
  Player player = Player::kOne;
  std::variant<Move, DecisionChoice> action;
  friend bool operator==(const RecordedAction&, const RecordedAction&) = default;
};

// A complete game. On disk, one JSON document:
//
//   {
//     "format": "boop-record/1",
//     "game_index": 3,
//     "seed": 1003,
//     "players": {"P1": <agent>, "P2": <agent>},   // or "human"
//     "actions": [{"player": "P1", "move": "S@c3"},
//                 {"player": "P1", "decision": "remove:a1,b1,c1"}, ...],
//     "winner": "P2",                               // null if unfinished
//     "plies": 57,
//     "anomaly": false
//   }
//
// <agent> is the AgentConfig object written by ToJson().
struct GameRecord {
  int game_index = 0;
  std::uint64_t seed = 0;
  // nullopt marks a human seat.
  std::optional<AgentConfig> p1;
  std::optional<AgentConfig> p2;
  std::vector<RecordedAction> actions;
  std::optional<Player> winner;
  int plies = 0;
  bool anomaly = false;  // ply cap reached; winner assigned by forfeit

  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

inline constexpr const char* kRecordFormat = "boop-record/1";

Json RecordToJson(const GameRecord& record);
GameRecord RecordFromJson(const Json& j);

// Pretty-printed document with a trailing newline.
std::string WriteRecord(const GameRecord& record);
// Throws FormatError with a line or field diagnostic.
GameRecord ParseRecord(const std::string& text, const std::string& source = "record");

void SaveRecord(const GameRecord& record, const std::filesystem::path& path);
GameRecord LoadRecord(const std::filesystem::path& path);

class ReplayError : public std::runtime_error {
 public:
  ReplayError(int action_index, int ply, const std::string& what)
      : std::runtime_error(what), action_index_(action_index), ply_(ply) {}
  int action_index() const { return action_index_; }
  int ply() const { return ply_; }

 private:
  int action_index_;
  int ply_;
};

// Re-applies every action through the engine and checks the recorded
// outcome. Returns the final state; throws ReplayError naming the ply.
GameState ReplayRecord(const GameRecord& record);

}  // namespace boop

#endif  // BOOP_RECORD_H_
