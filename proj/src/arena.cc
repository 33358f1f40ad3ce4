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

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace boop {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void Accumulate(MoveTimeStats& into, const MoveTimeStats& from) {
  into.moves += from.moves;
  into.total_ms += from.total_ms;
  into.max_ms = std::max(into.max_ms, from.max_ms);
}

Json TimeToJson(const MoveTimeStats& t) {
  return Json{{"moves", t.moves}, {"mean_ms", t.mean_ms()}, {"max_ms", t.max_ms}};
}

int GetCount(const Json& j, const char* key, const std::string& source) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw FormatError(source + ": " + key + ": expected an integer");
  }
  return j[key].get<int>();
}

}  // namespace

void MatchSpec::Validate() const {
  if (games < 1) throw std::invalid_argument("match: games must be >= 1");
  if (jobs < 1) throw std::invalid_argument("match: jobs must be >= 1");
  if (ply_cap < 1) throw std::invalid_argument("match: ply cap must be >= 1");
  agent_a.params.Validate();
  agent_b.params.Validate();
  if (budget) {
    SearchParams p;
    p.budget = *budget;
    p.Validate();
  }
}

MatchSpec MatchSpecFromJson(const Json& j, const std::string& source, MatchSpec spec) {
  if (!j.is_object()) throw FormatError(source + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "weights" && key != "params" && key != "match") {
      throw FormatError(source + "." + key + ": unknown field");
    }
  }
  AgentConfig defaults;
  if (j.contains("weights")) defaults.weights = WeightsFromJson(j["weights"], source + ".weights");
  if (j.contains("params")) defaults.params = ParamsFromJson(j["params"], source + ".params");
  spec.agent_a.weights = spec.agent_b.weights = defaults.weights;
  spec.agent_a.params = spec.agent_b.params = defaults.params;
  if (!j.contains("match")) return spec;

  const Json& m = j["match"];
  const std::string path = source + ".match";
  if (!m.is_object()) throw FormatError(path + ": expected an object");
  auto integer = [&](const char* key) {
    if (!m[key].is_number_integer()) throw FormatError(path + "." + key + ": expected an integer");
    return m[key].get<std::int64_t>();
  };
  for (const auto& [key, value] : m.items()) {
    if (key == "a") {
      spec.agent_a = AgentFromJson(value, path + ".a", defaults);
    } else if (key == "b") {
      spec.agent_b = AgentFromJson(value, path + ".b", defaults);
    } else if (key == "games") {
      spec.games = static_cast<int>(integer("games"));
    } else if (key == "seats") {
      if (value == "alternate") {
        spec.seats = SeatPolicy::kAlternate;
      } else if (value == "fixed") {
        spec.seats = SeatPolicy::kFixed;
      } else {
        throw FormatError(path + ".seats: expected \"alternate\" or \"fixed\"");
      }
    } else if (key == "seed") {
      spec.base_seed = static_cast<std::uint64_t>(integer("seed"));
    } else if (key == "budget") {
      spec.budget = BudgetFromJson(value, path + ".budget");
    } else if (key == "jobs") {
      spec.jobs = static_cast<int>(integer("jobs"));
    } else if (key == "ply_cap") {
      spec.ply_cap = static_cast<int>(integer("ply_cap"));
    } else {
      throw FormatError(path + "." + key + ": unknown field");
    }
  }
  return spec;
}

bool AgentAFirst(const MatchSpec& spec, int index) {
  return spec.seats == SeatPolicy::kFixed || index % 2 == 0;
}

std::uint64_t GameSeed(std::uint64_t base_seed, int index) {
  return base_seed + static_cast<std::uint64_t>(index);
}

std::uint64_t AgentSeed(std::uint64_t game_seed, Player seat) {
  return SplitMix64(game_seed * 2 + static_cast<std::uint64_t>(ToIndex(seat)));
}

PlayedGame PlayGame(const AgentConfig& p1, const AgentConfig& p2, int game_index,
                    std::uint64_t game_seed, int ply_cap) {
  AgentConfig c1 = p1;
  AgentConfig c2 = p2;
  c1.seed = AgentSeed(game_seed, Player::kOne);
  c2.seed = AgentSeed(game_seed, Player::kTwo);
  Agent agents[2] = {Agent(c1), Agent(c2)};

  PlayedGame out;
  out.record.game_index = game_index;
  out.record.seed = game_seed;
  out.record.p1 = c1;
  out.record.p2 = c2;

  GameState state = GameState::Initial();
  while (!state.is_terminal()) {
    const Player mover = state.to_move();
    if (state.phase() == Phase::kAwaitingDecision) {
      const DecisionChoice choice = border_choice(state.pending_choices(), state.board());
      out.record.actions.push_back({mover, choice});
      state = resolve_decision(state, choice);
      continue;
    }
    if (state.ply() >= ply_cap) break;
    const auto start = std::chrono::steady_clock::now();
    const Move move = agents[ToIndex(mover)].choose_move(state);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    MoveTimeStats& t = mover == Player::kOne ? out.time_p1 : out.time_p2;
    ++t.moves;
    t.total_ms += ms;
    t.max_ms = std::max(t.max_ms, ms);
    out.record.actions.push_back({mover, move});
    state = apply_move(state, move);
  }
  out.record.plies = state.ply();
  if (state.is_terminal()) {
    out.record.winner = state.result();
  } else {
    out.record.anomaly = true;
    out.record.winner = Opponent(state.to_move());
  }
  return out;
}

MatchResult run_series(const MatchSpec& spec, const ProgressFn& progress) {
  spec.Validate();
  AgentConfig a = spec.agent_a;
  AgentConfig b = spec.agent_b;
  if (spec.budget) {
    a.params.budget = *spec.budget;
    b.params.budget = *spec.budget;
  }

  MatchResult result;
  result.name_a = a.Name();
  result.name_b = b.Name();
  result.games = spec.games;
  result.base_seed = spec.base_seed;
  result.budget = a.params.budget == b.params.budget
                      ? a.params.budget.ToString()
                      : a.params.budget.ToString() + "/" + b.params.budget.ToString();

  std::vector<std::optional<PlayedGame>> played(spec.games);
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  int done = 0;

  auto worker = [&] {
    while (!stop.load()) {
      const int index = next.fetch_add(1);
      if (index >= spec.games) return;
      const bool a_first = AgentAFirst(spec, index);
      try {
        PlayedGame g = PlayGame(a_first ? a : b, a_first ? b : a, index,
                                GameSeed(spec.base_seed, index), spec.ply_cap);
        std::lock_guard<std::mutex> lock(mu);
        played[index] = std::move(g);
        ++done;
        if (progress) progress(done, spec.games, played[index]->record);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mu);
        if (!stop.exchange(true)) {
          result.error = "game " + std::to_string(index) + ": " + e.what();
        }
        return;
      }
    }
  };

  if (spec.jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < spec.jobs; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  result.aborted = stop.load();

  for (int index = 0; index < spec.games; ++index) {
    if (!played[index]) continue;
    const PlayedGame& g = *played[index];
    const bool a_first = AgentAFirst(spec, index);
    const Player a_seat = a_first ? Player::kOne : Player::kTwo;
    const bool a_won = g.record.winner == a_seat;
    if (a_won) {
      ++(a_first ? result.a_wins_as_p1 : result.a_wins_as_p2);
    } else {
      ++(a_first ? result.b_wins_as_p2 : result.b_wins_as_p1);
    }
    if (g.record.anomaly) result.anomalies.push_back(index);
    Accumulate(result.time_a, a_first ? g.time_p1 : g.time_p2);
    Accumulate(result.time_b, a_first ? g.time_p2 : g.time_p1);
    result.records.push_back(g.record);
  }
  return result;
}

Json ResultToJson(const MatchResult& r) {
  Json j;
  j["agent_a"] = r.name_a;
  j["agent_b"] = r.name_b;
  j["games"] = r.games;
  j["budget"] = r.budget;
  j["base_seed"] = r.base_seed;
  j["a_wins_as_p1"] = r.a_wins_as_p1;
  j["a_wins_as_p2"] = r.a_wins_as_p2;
  j["b_wins_as_p1"] = r.b_wins_as_p1;
  j["b_wins_as_p2"] = r.b_wins_as_p2;
  j["anomalies"] = r.anomalies;
  j["aborted"] = r.aborted;
  j["error"] = r.error;
  return j;
}

MatchResult ResultFromJson(const Json& j, const std::string& source) {
  if (!j.is_object()) throw FormatError(source + ": expected an object");
  MatchResult r;
  for (const char* key : {"agent_a", "agent_b", "budget"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw FormatError(source + ": " + key + ": expected a string");
    }
  }
  r.name_a = j["agent_a"].get<std::string>();
  r.name_b = j["agent_b"].get<std::string>();
  r.budget = j["budget"].get<std::string>();
  r.games = GetCount(j, "games", source);
  r.a_wins_as_p1 = GetCount(j, "a_wins_as_p1", source);
  r.a_wins_as_p2 = GetCount(j, "a_wins_as_p2", source);
  r.b_wins_as_p1 = GetCount(j, "b_wins_as_p1", source);
  r.b_wins_as_p2 = GetCount(j, "b_wins_as_p2", source);
  if (j.contains("base_seed")) r.base_seed = j["base_seed"].get<std::uint64_t>();
  if (j.contains("anomalies")) r.anomalies = j["anomalies"].get<std::vector<int>>();
  if (j.contains("aborted")) r.aborted = j["aborted"].get<bool>();
  if (j.contains("error")) r.error = j["error"].get<std::string>();
  return r;
}

void SaveResult(const MatchResult& r, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "games");
  {
    std::ofstream out(dir / "result.json");
    out << ResultToJson(r).dump(2) << "\n";
  }
  {
    std::ofstream out(dir / "timing.json");
    out << Json{{"agent_a", TimeToJson(r.time_a)}, {"agent_b", TimeToJson(r.time_b)}}.dump(2)
        << "\n";
  }
  for (const GameRecord& rec : r.records) {
    char name[32];
    std::snprintf(name, sizeof(name), "game_%04d.json", rec.game_index);
    SaveRecord(rec, dir / "games" / name);
  }
}

std::vector<TableRow> summarize(const std::vector<MatchResult>& results) {
  if (results.empty()) throw std::invalid_argument("summarize: no results");
  std::vector<TableRow> rows;
  for (const MatchResult& r : results) {
    TableRow row;
    row.agent = r.name_a;
    row.opponent = r.name_b;
    row.a_wins_as_p1 = r.a_wins_as_p1;
    row.a_wins_as_p2 = r.a_wins_as_p2;
    row.p1_seat_wins = r.p1_seat_wins();
    row.p2_seat_wins = r.p2_seat_wins();
    row.games = r.played();
    row.win_rate = r.win_rate_a();
    rows.push_back(row);
  }
  return rows;
}

std::string FormatPercent(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", rate * 100.0);
  std::string s = buf;
  if (s.ends_with(".0")) s.resize(s.size() - 2);
  return s + "%";
}

std::string RenderText(const std::vector<TableRow>& rows) {
  std::size_t agent_w = 5, opp_w = 8;
  for (const TableRow& r : rows) {
    agent_w = std::max(agent_w, r.agent.size());
    opp_w = std::max(opp_w, r.opponent.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(agent_w) << "agent" << "  " << std::setw(opp_w) << "opponent"
      << std::right << "  " << std::setw(6) << "A@P1" << "  " << std::setw(6) << "A@P2" << "  "
      << std::setw(8) << "win rate" << "  " << std::setw(7) << "P1 wins" << "  " << std::setw(7)
      << "P2 wins" << "  " << std::setw(5) << "games" << "\n";
  for (const TableRow& r : rows) {
    out << std::left << std::setw(agent_w) << r.agent << "  " << std::setw(opp_w) << r.opponent
        << std::right << "  " << std::setw(6) << r.a_wins_as_p1 << "  " << std::setw(6)
        << r.a_wins_as_p2 << "  " << std::setw(8) << FormatPercent(r.win_rate) << "  "
        << std::setw(7) << r.p1_seat_wins << "  " << std::setw(7) << r.p2_seat_wins << "  "
        << std::setw(5) << r.games << "\n";
  }
  return out.str();
}

std::string RenderCsv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "agent,opponent,a_wins_as_p1,a_wins_as_p2,win_rate,p1_seat_wins,p2_seat_wins,games\n";
  for (const TableRow& r : rows) {
    out << r.agent << "," << r.opponent << "," << r.a_wins_as_p1 << "," << r.a_wins_as_p2 << ","
        << r.win_rate << "," << r.p1_seat_wins << "," << r.p2_seat_wins << "," << r.games << "\n";
  }
  return out.str();
}

Json RenderJson(const std::vector<TableRow>& rows) {
  Json out = Json::array();
  for (const TableRow& r : rows) {
    out.push_back(Json{{"agent", r.agent},
                       {"opponent", r.opponent},
                       {"a_wins_as_p1", r.a_wins_as_p1},
                       {"a_wins_as_p2", r.a_wins_as_p2},
                       {"win_rate", r.win_rate},
                       {"p1_seat_wins", r.p1_seat_wins},
                       {"p2_seat_wins", r.p2_seat_wins},
                       {"games", r.games}});
  }
  return out;
}

}  // namespace boop
