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

#ifndef BOOP_SEARCH_H_
#define BOOP_SEARCH_H_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "boop/engine.h"
#include "boop/heuristic.h"
#include "boop/solver.h"

namespace boop {

// Per-move search budget: wall-clock time or a fixed iteration count.
struct Budget {
  enum class Mode { kWallClock, kIterations };
  Mode mode = Mode::kWallClock;
  std::chrono::milliseconds time{1000};
  int iterations = 0;

  static Budget Millis(int ms) { return Budget{Mode::kWallClock, std::chrono::milliseconds(ms), 0}; }
  static Budget Iterations(int n) { return Budget{Mode::kIterations, {}, n}; }
  std::string ToString() const;  // "250ms" / "400it"
  friend bool operator==(const Budget&, const Budget&) = default;
};

struct SearchParams {
  int k = 20;              // playout length cap
  int m = 5;               // preselected root children
  double discount = 0.9;   // playout reward discount d
  double c_explore = std::sqrt(2.0);
  Budget budget;
  int playout_ply_cap = 1000;  // random playouts only

  // Throws std::invalid_argument on out-of-range values.
  void Validate() const;
  friend bool operator==(const SearchParams&, const SearchParams&) = default;
};

enum class AgentKind { kVanilla, kHeuristic, kMctsPlus };

struct Injections {
  bool selection = false;
  bool expansion = false;
  bool playout = false;
  friend bool operator==(const Injections&, const Injections&) = default;
};

struct AgentConfig {
  AgentKind kind = AgentKind::kMctsPlus;
  Injections inject{true, true, true};
  SearchParams params;
  HeuristicWeights weights;
  std::uint64_t seed = 0;

  // "vanilla", "heuristic", "mcts+", "mcts+S", ..., "mcts+SEP".
  std::string Name() const;
  // Parses a name as printed by Name(); "mcts-co" is accepted for mcts+SEP.
  // Returns nullopt for unknown names.
  static std::optional<AgentConfig> FromName(std::string_view name);

  // Injections actually in effect; the vanilla agent has none.
  Injections Effective() const;

  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

struct SearchNode {
  std::optional<Move> move;  // nullopt at the root
  int parent = -1;
  std::vector<int> children;
  int visits = 0;
  double score_sum = 0.0;  // from `mover`'s perspective
  bool terminal = false;
  Player mover = Player::kOne;  // player who made `move`
  GameState state;

  // Candidate moves not yet expanded, filled on first expansion.
  std::vector<std::uint8_t> untried;
  bool untried_ready = false;

  double mean() const { return visits > 0 ? score_sum / visits : 0.0; }
};

// Tree arena; node 0 is the root. Owned by one search.
class SearchTree {
 public:
  // `candidates` restricts the root's children; every other legal move is
  // masked at the root.
  SearchTree(const GameState& root_state, std::span<const Move> candidates);

  SearchNode& node(int i) { return nodes_[i]; }
  const SearchNode& node(int i) const { return nodes_[i]; }
  const SearchNode& root() const { return nodes_.front(); }
  int size() const { return static_cast<int>(nodes_.size()); }
  const MoveMask& root_mask() const { return root_mask_; }

  // Appends a child of `parent` for `move`; returns its index.
  int AddChild(int parent, Move move);
  // Lazily fills node(i).untried with the unexpanded legal moves.
  void PrepareUntried(int i);

 private:
  std::vector<SearchNode> nodes_;
  MoveMask root_mask_;
};

struct SearchStats {
  int iterations = 0;
  int tree_size = 0;
  // Solver calls whose argmax set had more than one move.
  std::int64_t solver_ties = 0;
  std::int64_t solver_calls = 0;
  bool used_fallback = false;
};

// UCB1 descent. Stops at a terminal node or one with unexpanded candidates.
// Unvisited children rank above all others; ties go to the earliest child.
int select(SearchTree& tree, double c_explore);

// Adds one reward along the path to the root. `reward` is from the leaf
// mover's perspective; the sign flips whenever the mover changes.
void backpropagate(SearchTree& tree, int leaf, double reward);

// Root candidates with visits > 0 sharing the highest mean.
std::vector<Move> best_ratio(const SearchTree& tree, std::span<const Move> candidates);

// Running playout score: terminal scores are added as-is, the i-th
// non-terminal move (i from 1) adds discount^i * f, and the result is the
// sum divided by the number of moves played.
class PlayoutAccumulator {
 public:
  explicit PlayoutAccumulator(double discount) : discount_(discount) {}
  void Add(double f, bool terminal);
  int steps() const { return steps_; }
  double Result() const;

 private:
  double discount_;
  double weight_ = 1.0;
  double sum_ = 0.0;
  int steps_ = 0;
};

struct SearchOutcome {
  SearchTree tree;
  std::vector<Move> candidates;
  Move move;
};

// Search-based or greedy agent for the placement phase. Decisions are always
// resolved with border_choice. One instance is single-threaded.
class Agent {
 public:
  explicit Agent(AgentConfig config);

  const AgentConfig& config() const { return config_; }
  const SearchStats& last_stats() const { return stats_; }
  std::int64_t total_solver_ties() const { return total_ties_; }

  // Throws NoLegalMoveError / RuleError if `state` offers no placement.
  Move choose_move(const GameState& state);

  // Full search from `state`, keeping the tree. Not valid for the
  // heuristic agent, which does not build one.
  SearchOutcome search(const GameState& state);

  // Single steps, exposed for testing.
  int expand(SearchTree& tree, int node);
  // Reward from `perspective`, in [-1, 1]. Throws std::logic_error on a
  // terminal state.
  double playout(const GameState& state, Player perspective);

 private:
  template <typename T>
  const T& Draw(const std::vector<T>& items);
  std::vector<ScoredMove> SolveBest(const GameState& state, const MoveMask& mask);
  bool OutOfBudget(int iterations, std::chrono::steady_clock::time_point start) const;

  AgentConfig config_;
  CopSolver solver_;
  std::mt19937_64 rng_;
  SearchStats stats_;
  std::int64_t total_ties_ = 0;
};

}  // namespace boop

#endif  // BOOP_SEARCH_H_
