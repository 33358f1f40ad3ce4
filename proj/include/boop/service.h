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

#ifndef BOOP_SERVICE_H_
#define BOOP_SERVICE_H_

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>

#include "boop/config.h"
#include "boop/record.h"
#include "boop/search.h"

namespace boop {

enum class SessionStatus { kAwaitingHuman, kAwaitingHumanDecision, kAgentThinking, kFinished };

std::string ToString(SessionStatus s);

class SessionError : public std::runtime_error {
 public:
  enum class Kind { kNotFound, kBadRequest, kNotYourTurn, kIllegal };
  SessionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

using HumanAction = std::variant<Move, DecisionChoice>;

// Consistent copy of one session, taken under its lock.
struct SessionSnapshot {
  std::string id;
  GameState state;
  Player human_seat = Player::kOne;
  AgentConfig agent;
  SessionStatus status = SessionStatus::kAwaitingHuman;
  std::vector<RecordedAction> history;
  std::string agent_error;  // non-empty if the agent failed
};

// Public JSON view shared with the browser client:
//   id, status, human_seat, agent, to_move, phase, ply, winner,
//   board (6 rows from row 1, each 6 cells of null or {owner, kind}),
//   pools {P1: {small, large}, P2: ...}, pending_choices, legal_moves,
//   history [{player, move|decision}], thinking, error
Json SessionView(const SessionSnapshot& s);

// In-memory sessions. Agent replies run on a background thread per session;
// at most one is in flight, and human actions arriving meanwhile are
// rejected.
class SessionManager {
 public:
  // Finished games are appended to `record_dir` when set.
  explicit SessionManager(std::optional<std::filesystem::path> record_dir = std::nullopt);
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  std::string create_session(const AgentConfig& agent, Player human_seat);
  // Body: {"agent": <name or object>, "human_seat": "P1"|"P2", "budget_ms": n?}
  std::string create_session(const Json& request);

  SessionSnapshot get_state(const std::string& id) const;
  SessionSnapshot submit_human_action(const std::string& id, const HumanAction& action);

  // Blocks until no agent computation is in flight or `timeout` passes.
  SessionSnapshot wait_idle(const std::string& id, std::chrono::milliseconds timeout) const;

  GameRecord record(const std::string& id) const;
  std::size_t size() const;

 private:
  struct Session;
  std::shared_ptr<Session> Find(const std::string& id) const;
  void ScheduleAgent(const std::shared_ptr<Session>& s);
  static void AgentLoop(std::shared_ptr<Session> s, std::optional<std::filesystem::path> dir);

  std::optional<std::filesystem::path> record_dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace boop

#endif  // BOOP_SERVICE_H_
