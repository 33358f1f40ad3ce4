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

#include <cstdio>
#include <random>

namespace boop {

struct SessionManager::Session {
  std::string id;
  mutable std::mutex mu;
  mutable std::condition_variable idle;
  GameState state = GameState::Initial();
  Player human_seat = Player::kOne;
  AgentConfig config;
  std::unique_ptr<Agent> agent;
  std::vector<RecordedAction> history;
  bool thinking = false;
  std::string agent_error;
  std::thread worker;

  SessionStatus Status() const {
    if (state.is_terminal()) return SessionStatus::kFinished;
    if (thinking || state.to_move() != human_seat) return SessionStatus::kAgentThinking;
    return state.phase() == Phase::kAwaitingDecision ? SessionStatus::kAwaitingHumanDecision
                                                     : SessionStatus::kAwaitingHuman;
  }

  SessionSnapshot Snapshot() const {
    return SessionSnapshot{id, state, human_seat, config, Status(), history, agent_error};
  }

  GameRecord Record() const {
    GameRecord r;
    r.seed = config.seed;
    if (human_seat == Player::kOne) {
      r.p2 = config;
    } else {
      r.p1 = config;
    }
    r.actions = history;
    r.winner = state.result();
    r.plies = state.ply();
    return r;
  }
};

std::string ToString(SessionStatus s) {
  switch (s) {
    case SessionStatus::kAwaitingHuman:
      return "awaiting_human";
    case SessionStatus::kAwaitingHumanDecision:
      return "awaiting_human_decision";
    case SessionStatus::kAgentThinking:
      return "agent_thinking";
    case SessionStatus::kFinished:
      return "finished";
  }
  return "unknown";
}

Json SessionView(const SessionSnapshot& s) {
  const GameState& st = s.state;
  Json j;
  j["id"] = s.id;
  j["status"] = ToString(s.status);
  j["thinking"] = s.status == SessionStatus::kAgentThinking;
  j["human_seat"] = ToString(s.human_seat);
  j["agent"] = s.agent.Name();
  j["to_move"] = ToString(st.to_move());
  j["phase"] = st.phase() == Phase::kPlacement ? "placement" : "decision";
  j["ply"] = st.ply();
  j["winner"] = st.result() ? Json(ToString(*st.result())) : Json(nullptr);

  Json board = Json::array();
  for (int row = 1; row <= kBoardSize; ++row) {
    Json cells = Json::array();
    for (int col = 1; col <= kBoardSize; ++col) {
      const auto piece = st.board().at(Square{row, col});
      if (!piece) {
        cells.push_back(nullptr);
      } else {
        cells.push_back(Json{{"owner", ToString(piece->owner)},
                             {"kind", piece->kind == PieceKind::kSmall ? "S" : "L"}});
      }
    }
    board.push_back(std::move(cells));
  }
  j["board"] = std::move(board);

  Json pools;
  for (Player p : {Player::kOne, Player::kTwo}) {
    pools[ToString(p)] = Json{{"small", st.pool(p).small}, {"large", st.pool(p).large}};
  }
  j["pools"] = std::move(pools);

  Json choices = Json::array();
  Json legal = Json::array();
  if (s.status == SessionStatus::kAwaitingHumanDecision) {
    for (const DecisionChoice& c : st.pending_choices()) choices.push_back(c.ToString());
  } else if (s.status == SessionStatus::kAwaitingHuman) {
    for (const Move& m : legal_moves(st)) legal.push_back(m.ToString());
  }
  j["pending_choices"] = std::move(choices);
  j["legal_moves"] = std::move(legal);

  GameRecord r;
  r.actions = s.history;
  j["history"] = RecordToJson(r)["actions"];
  j["error"] = s.agent_error.empty() ? Json(nullptr) : Json(s.agent_error);
  return j;
}

SessionManager::SessionManager(std::optional<std::filesystem::path> record_dir)
    : record_dir_(std::move(record_dir)) {
  if (record_dir_) std::filesystem::create_directories(*record_dir_);
}

SessionManager::~SessionManager() {
  std::map<std::string, std::shared_ptr<Session>> sessions;
  {
    std::lock_guard<std::mutex> lock(mu_);
    sessions.swap(sessions_);
  }
  for (auto& [_, s] : sessions) {
    if (s->worker.joinable()) s->worker.join();
  }
}

std::string SessionManager::create_session(const AgentConfig& agent, Player human_seat) {
  agent.params.Validate();
  agent.weights.Validate();
  auto s = std::make_shared<Session>();
  s->human_seat = human_seat;
  s->config = agent;
  s->agent = std::make_unique<Agent>(agent);
  {
    std::lock_guard<std::mutex> lock(mu_);
    std::random_device rd;
    char token[40];
    std::snprintf(token, sizeof(token), "s%llu-%08x",
                  static_cast<unsigned long long>(next_id_++), rd());
    s->id = token;
    sessions_[s->id] = s;
  }
  if (human_seat != Player::kOne) ScheduleAgent(s);
  return s->id;
}

std::string SessionManager::create_session(const Json& request) {
  try {
    if (!request.is_object()) throw FormatError("request: expected an object");
    for (const auto& [key, _] : request.items()) {
      if (key != "agent" && key != "human_seat" && key != "budget_ms") {
        throw FormatError("request." + key + ": unknown field");
      }
    }
    if (!request.contains("agent")) throw FormatError("request.agent: missing");
    AgentConfig defaults;
    defaults.seed = std::random_device{}();
    AgentConfig cfg = AgentFromJson(request["agent"], "request.agent", defaults);
    if (request.contains("budget_ms")) {
      const Json& b = request["budget_ms"];
      if (!b.is_number_integer() || b.get<int>() <= 0) {
        throw FormatError("request.budget_ms: expected a positive integer");
      }
      cfg.params.budget = Budget::Millis(b.get<int>());
    }
    Player seat = Player::kOne;
    if (request.contains("human_seat")) {
      const Json& h = request["human_seat"];
      const auto p = h.is_string() ? ParsePlayer(h.get<std::string>()) : std::nullopt;
      if (!p) throw FormatError("request.human_seat: expected \"P1\" or \"P2\"");
      seat = *p;
    }
    return create_session(cfg, seat);
  } catch (const FormatError& e) {
    throw SessionError(SessionError::Kind::kBadRequest, e.what());
  } catch (const std::invalid_argument& e) {
    throw SessionError(SessionError::Kind::kBadRequest, e.what());
  }
}

std::shared_ptr<SessionManager::Session> SessionManager::Find(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw SessionError(SessionError::Kind::kNotFound, "no session " + id);
  }
  return it->second;
}

SessionSnapshot SessionManager::get_state(const std::string& id) const {
  const auto s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  return s->Snapshot();
}

SessionSnapshot SessionManager::wait_idle(const std::string& id,
                                          std::chrono::milliseconds timeout) const {
  const auto s = Find(id);
  std::unique_lock<std::mutex> lock(s->mu);
  s->idle.wait_for(lock, timeout, [&] { return !s->thinking; });
  return s->Snapshot();
}

GameRecord SessionManager::record(const std::string& id) const {
  const auto s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  return s->Record();
}

std::size_t SessionManager::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

SessionSnapshot SessionManager::submit_human_action(const std::string& id,
                                                    const HumanAction& action) {
  const auto s = Find(id);
  {
    std::lock_guard<std::mutex> lock(s->mu);
    const SessionStatus status = s->Status();
    if (status == SessionStatus::kFinished) {
      throw SessionError(SessionError::Kind::kNotYourTurn, "game is over");
    }
    if (status == SessionStatus::kAgentThinking) {
      throw SessionError(SessionError::Kind::kNotYourTurn, "agent is thinking");
    }
    try {
      if (const Move* m = std::get_if<Move>(&action)) {
        s->state = apply_move(s->state, *m);
      } else {
        s->state = resolve_decision(s->state, std::get<DecisionChoice>(action));
      }
    } catch (const RuleError& e) {
      throw SessionError(SessionError::Kind::kIllegal, e.what());
    }
    s->history.push_back({s->human_seat, action});
  }
  ScheduleAgent(s);
  std::lock_guard<std::mutex> lock(s->mu);
  return s->Snapshot();
}

void SessionManager::ScheduleAgent(const std::shared_ptr<Session>& s) {
  std::unique_lock<std::mutex> lock(s->mu);
  if (s->state.is_terminal()) {
    lock.unlock();
    if (record_dir_) {
      SaveRecord(record(s->id), *record_dir_ / (s->id + ".json"));
    }
    return;
  }
  if (s->state.to_move() == s->human_seat || s->thinking) return;
  s->thinking = true;
  // The previous worker cleared `thinking` as its last step under the lock.
  if (s->worker.joinable()) s->worker.join();
  s->worker = std::thread(AgentLoop, s, record_dir_);
}

void SessionManager::AgentLoop(std::shared_ptr<Session> s,
                               std::optional<std::filesystem::path> dir) {
  std::unique_lock<std::mutex> lock(s->mu);
  const Player seat = Opponent(s->human_seat);
  try {
    while (!s->state.is_terminal() && s->state.to_move() == seat) {
      if (s->state.phase() == Phase::kAwaitingDecision) {
        const DecisionChoice c = border_choice(s->state.pending_choices(), s->state.board());
        s->state = resolve_decision(s->state, c);
        s->history.push_back({seat, c});
        continue;
      }
      const GameState snapshot = s->state;
      lock.unlock();
      const Move m = s->agent->choose_move(snapshot);
      lock.lock();
      s->state = apply_move(s->state, m);
      s->history.push_back({seat, m});
    }
  } catch (const std::exception& e) {
    if (!lock.owns_lock()) lock.lock();
    s->agent_error = e.what();
  }
  const bool finished = s->state.is_terminal();
  const GameRecord rec = s->Record();
  s->thinking = false;
  lock.unlock();
  s->idle.notify_all();
  if (finished && dir) SaveRecord(rec, *dir / (s->id + ".json"));
}

}  // namespace boop
