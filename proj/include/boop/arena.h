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

#ifndef BOOP_ARENA_H_
#define BOOP_ARENA_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "boop/config.h"
#include "boop/record.h"
#include "boop/search.h"

namespace boop {

enum class SeatPolicy { kAlternate, kFixed };

struct MatchSpec {
  AgentConfig agent_a;
  AgentConfig agent_b;
  int games = 100;
  SeatPolicy seats = SeatPolicy::kAlternate;
  std::uint64_t base_seed = 1;
  std::optional<Budget> budget;  // overrides both agents' budgets
  int jobs = 1;
  int ply_cap = 1000;

  void Validate() const;
};

struct MoveTimeStats {
  int moves = 0;
  double total_ms = 0.0;
  double max_ms = 0.0;
  double mean_ms() const { return moves > 0 ? total_ms / moves : 0.0; }
};

struct MatchResult {
  std::string name_a;
  std::string name_b;
  int games = 0;       // requested
  int a_wins_as_p1 = 0;
  int a_wins_as_p2 = 0;
  int b_wins_as_p1 = 0;
  int b_wins_as_p2 = 0;
  std::string budget;  // as recorded, e.g. "250ms"
  std::uint64_t base_seed = 0;
  std::vector<GameRecord> records;  // sorted by game index
  std::vector<int> anomalies;       // game indices that hit the ply cap
  bool aborted = false;
  std::string error;
  // Wall-clock figures; excluded from reproducibility comparisons.
  MoveTimeStats time_a;
  MoveTimeStats time_b;

  int wins_a() const { return a_wins_as_p1 + a_wins_as_p2; }
  int wins_b() const { return b_wins_as_p1 + b_wins_as_p2; }
  int played() const { return wins_a() + wins_b(); }
  int p1_seat_wins() const { return a_wins_as_p1 + b_wins_as_p1; }
  int p2_seat_wins() const { return a_wins_as_p2 + b_wins_as_p2; }
  double win_rate_a() const { return played() > 0 ? double(wins_a()) / played() : 0.0; }
};

// Seat assignment for game `index`: true if agent A plays first.
bool AgentAFirst(const MatchSpec& spec, int index);

// Seed of game `index` and the per-seat agent seeds derived from it.
std::uint64_t GameSeed(std::uint64_t base_seed, int index);
std::uint64_t AgentSeed(std::uint64_t game_seed, Player seat);

struct PlayedGame {
  GameRecord record;
  MoveTimeStats time_p1;
  MoveTimeStats time_p2;
};

// Plays one game to completion (or the ply cap) between two agents.
PlayedGame PlayGame(const AgentConfig& p1, const AgentConfig& p2, int game_index,
                    std::uint64_t game_seed, int ply_cap);

using ProgressFn = std::function<void(int done, int total, const GameRecord&)>;

// Runs the series; games execute on `spec.jobs` threads. An agent failure
// stops scheduling, and the result is returned with `aborted` set.
MatchResult run_series(const MatchSpec& spec, const ProgressFn& progress = {});

// Match configuration document:
//   {
//     "weights": {...},          // shared default for both agents
//     "params": {...},           // shared default SearchParams
//     "match": {
//       "a": "mcts+SEP" | {"agent": ..., "params": ..., "weights": ...},
//       "b": "vanilla",
//       "games": 50, "seats": "alternate" | "fixed", "seed": 1,
//       "budget": {"ms": 250} | {"iterations": 400},
//       "jobs": 1, "ply_cap": 1000
//     }
//   }
// Every key is optional; `base` supplies the missing values.
MatchSpec MatchSpecFromJson(const Json& j, const std::string& source, MatchSpec base = {});

// Series summary without per-game records.
Json ResultToJson(const MatchResult& r);
MatchResult ResultFromJson(const Json& j, const std::string& source);

// Writes result.json, timing.json and games/game_NNNN.json under `dir`.
void SaveResult(const MatchResult& r, const std::filesystem::path& dir);

struct TableRow {
  std::string agent;     // agent A
  std::string opponent;  // agent B
  int a_wins_as_p1 = 0;
  int a_wins_as_p2 = 0;
  int p1_seat_wins = 0;
  int p2_seat_wins = 0;
  int games = 0;
  double win_rate = 0.0;  // agent A, in [0, 1]
};

std::vector<TableRow> summarize(const std::vector<MatchResult>& results);

// "96%", "56.7%"
std::string FormatPercent(double rate);
std::string RenderText(const std::vector<TableRow>& rows);
std::string RenderCsv(const std::vector<TableRow>& rows);
Json RenderJson(const std::vector<TableRow>& rows);

}  // namespace boop

#endif  // BOOP_ARENA_H_
