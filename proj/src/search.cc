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

#include "boop/search.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace boop {

std::string Budget::ToString() const {
  if (mode == Mode::kIterations) return std::to_string(iterations) + "it";
  return std::to_string(time.count()) + "ms";
}

void SearchParams::Validate() const {
  if (k < 1) throw std::invalid_argument("search: k must be >= 1");
  if (m < 1) throw std::invalid_argument("search: m must be >= 1");
  if (!(discount > 0.0 && discount <= 1.0)) {
    throw std::invalid_argument("search: discount must lie in (0, 1]");
  }
  if (!(c_explore >= 0.0) || !std::isfinite(c_explore)) {
    throw std::invalid_argument("search: exploration constant must be finite and >= 0");
  }
  if (budget.mode == Budget::Mode::kWallClock ? budget.time.count() <= 0
                                              : budget.iterations <= 0) {
    throw std::invalid_argument("search: budget must be positive");
  }
  if (playout_ply_cap < 1) throw std::invalid_argument("search: playout ply cap must be >= 1");
}

std::string AgentConfig::Name() const {
  switch (kind) {
    case AgentKind::kVanilla:
      return "vanilla";
    case AgentKind::kHeuristic:
      return "heuristic";
    case AgentKind::kMctsPlus: {
      std::string name = "mcts+";
      if (inject.selection) name += 'S';
      if (inject.expansion) name += 'E';
      if (inject.playout) name += 'P';
      return name;
    }
  }
  return "unknown";
}

std::optional<AgentConfig> AgentConfig::FromName(std::string_view name) {
  AgentConfig cfg;
  if (name == "vanilla") {
    cfg.kind = AgentKind::kVanilla;
    cfg.inject = {};
    return cfg;
  }
  if (name == "heuristic") {
    cfg.kind = AgentKind::kHeuristic;
    cfg.inject = {};
    return cfg;
  }
  if (name == "mcts-co") return cfg;
  constexpr std::string_view kPrefix = "mcts+";
  if (!name.starts_with(kPrefix)) return std::nullopt;
  name.remove_prefix(kPrefix.size());
  // Letters must appear in S, E, P order, each at most once.
  cfg.inject = {};
  std::size_t pos = 0;
  auto take = [&](char letter) {
    if (pos < name.size() && name[pos] == letter) {
      ++pos;
      return true;
    }
    return false;
  };
  cfg.inject.selection = take('S');
  cfg.inject.expansion = take('E');
  cfg.inject.playout = take('P');
  if (pos != name.size()) return std::nullopt;
  return cfg;
}

Injections AgentConfig::Effective() const {
  return kind == AgentKind::kMctsPlus ? inject : Injections{};
}

SearchTree::SearchTree(const GameState& root_state, std::span<const Move> candidates)
    : root_mask_(MoveMask::AllBut(candidates)) {
  SearchNode root;
  root.state = root_state;
  root.mover = Opponent(root_state.to_move());
  root.terminal = root_state.is_terminal();
  for (const Move& m : candidates) root.untried.push_back(static_cast<std::uint8_t>(m.slot()));
  root.untried_ready = true;
  nodes_.push_back(std::move(root));
}

int SearchTree::AddChild(int parent, Move move) {
  SearchNode child;
  child.move = move;
  child.parent = parent;
  child.mover = nodes_[parent].state.to_move();
  child.state = ApplyTurn(nodes_[parent].state, move);
  child.terminal = child.state.is_terminal();
  const int index = size();
  nodes_.push_back(std::move(child));
  nodes_[parent].children.push_back(index);
  return index;
}

void SearchTree::PrepareUntried(int i) {
  SearchNode& n = nodes_[i];
  if (n.untried_ready) return;
  n.untried_ready = true;
  if (n.terminal) return;
  MoveMask existing;
  for (int c : n.children) existing.Add(*nodes_[c].move);
  for (const Move& m : legal_moves(n.state)) {
    if (!existing.Contains(m)) n.untried.push_back(static_cast<std::uint8_t>(m.slot()));
  }
}

int select(SearchTree& tree, double c_explore) {
  int current = 0;
  while (true) {
    tree.PrepareUntried(current);
    const SearchNode& n = tree.node(current);
    if (n.terminal || !n.untried.empty()) return current;
    if (n.children.empty()) return current;

    const double log_parent = std::log(std::max(1, n.visits));
    int best = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int c : n.children) {
      const SearchNode& child = tree.node(c);
      if (current == 0 && tree.root_mask().Contains(*child.move)) continue;
      const double value =
          child.visits == 0
              ? std::numeric_limits<double>::infinity()
              : child.mean() + c_explore * std::sqrt(log_parent / child.visits);
      if (best == -1 || value > best_value) {
        best = c;
        best_value = value;
      }
    }
    if (best == -1) return current;
    current = best;
  }
}

void backpropagate(SearchTree& tree, int leaf, double reward) {
  const Player leaf_mover = tree.node(leaf).mover;
  for (int i = leaf; i != -1; i = tree.node(i).parent) {
    SearchNode& n = tree.node(i);
    ++n.visits;
    n.score_sum += n.mover == leaf_mover ? reward : -reward;
  }
}

std::vector<Move> best_ratio(const SearchTree& tree, std::span<const Move> candidates) {
  std::vector<Move> best;
  double top = -std::numeric_limits<double>::infinity();
  for (int c : tree.root().children) {
    const SearchNode& child = tree.node(c);
    if (child.visits == 0) continue;
    if (std::find(candidates.begin(), candidates.end(), *child.move) == candidates.end()) {
      continue;
    }
    const double ratio = child.mean();
    if (ratio > top) {
      top = ratio;
      best.clear();
    }
    if (ratio == top) best.push_back(*child.move);
  }
  return best;
}

Agent::Agent(AgentConfig config)
    : config_(config), solver_(config.weights), rng_(config.seed) {
  config_.params.Validate();
}

template <typename T>
const T& Agent::Draw(const std::vector<T>& items) {
  std::uniform_int_distribution<std::size_t> dist(0, items.size() - 1);
  return items[dist(rng_)];
}

std::vector<ScoredMove> Agent::SolveBest(const GameState& state, const MoveMask& mask) {
  auto best = solver_.solve_best(state, mask);
  ++stats_.solver_calls;
  if (best.size() > 1) {
    ++stats_.solver_ties;
    ++total_ties_;
  }
  return best;
}

bool Agent::OutOfBudget(int iterations, std::chrono::steady_clock::time_point start) const {
  const Budget& b = config_.params.budget;
  if (b.mode == Budget::Mode::kIterations) return iterations >= b.iterations;
  return std::chrono::steady_clock::now() - start >= b.time;
}

int Agent::expand(SearchTree& tree, int node) {
  tree.PrepareUntried(node);
  auto& untried = tree.node(node).untried;
  if (tree.node(node).terminal || untried.empty()) {
    throw std::logic_error("expand: node is terminal or fully expanded");
  }
  std::size_t pick = 0;
  if (config_.Effective().expansion) {
    std::vector<Move> open;
    open.reserve(untried.size());
    for (std::uint8_t slot : untried) open.push_back(Move::FromSlot(slot));
    const Move chosen = Draw(SolveBest(tree.node(node).state, MoveMask::AllBut(open))).move;
    pick = std::find(untried.begin(), untried.end(), chosen.slot()) - untried.begin();
  } else {
    std::uniform_int_distribution<std::size_t> dist(0, untried.size() - 1);
    pick = dist(rng_);
  }
  const Move move = Move::FromSlot(untried[pick]);
  // Order of the untried list only matters for the random draw, which
  // indexes it directly, so swap-remove keeps runs reproducible.
  untried[pick] = untried.back();
  untried.pop_back();
  return tree.AddChild(node, move);
}

void PlayoutAccumulator::Add(double f, bool terminal) {
  weight_ *= discount_;
  sum_ += terminal ? f : weight_ * f;
  ++steps_;
}

double PlayoutAccumulator::Result() const { return steps_ > 0 ? sum_ / steps_ : 0.0; }

double Agent::playout(const GameState& start, Player perspective) {
  if (start.is_terminal()) throw std::logic_error("playout called on a terminal state");
  GameState gs = start;
  if (config_.Effective().playout) {
    PlayoutAccumulator acc(config_.params.discount);
    while (!gs.is_terminal() && acc.steps() < config_.params.k) {
      const Player mover = gs.to_move();
      const ScoredMove chosen = Draw(SolveBest(gs, MoveMask{}));
      gs = ApplyTurn(gs, chosen.move);
      // chosen.score is the mover's view; the objective is antisymmetric.
      acc.Add(mover == perspective ? chosen.score : -chosen.score, gs.is_terminal());
    }
    return acc.Result();
  }
  for (int ply = 0; ply < config_.params.playout_ply_cap; ++ply) {
    const auto moves = legal_moves(gs);
    gs = ApplyTurn(gs, Draw(moves));
    if (gs.is_terminal()) return terminal_score(gs, perspective);
  }
  return 0.0;
}

Move Agent::choose_move(const GameState& state) {
  stats_ = SearchStats{};
  if (config_.kind == AgentKind::kHeuristic) {
    return Draw(SolveBest(state, MoveMask{})).move;
  }
  const auto legal = legal_moves(state);
  if (legal.empty()) throw NoLegalMoveError("no legal move");
  if (legal.size() == 1) return legal.front();
  return search(state).move;
}

SearchOutcome Agent::search(const GameState& state) {
  if (config_.kind == AgentKind::kHeuristic) {
    throw std::logic_error("the heuristic agent does not search");
  }
  stats_ = SearchStats{};
  const auto legal = legal_moves(state);
  if (legal.empty()) throw NoLegalMoveError("no legal move");

  std::vector<Move> candidates;
  std::vector<ScoredMove> preselected;
  if (config_.Effective().selection) {
    preselected = solver_.solve_top_m(state, config_.params.m);
    for (const ScoredMove& sm : preselected) candidates.push_back(sm.move);
  } else {
    candidates = legal;
  }

  SearchTree tree(state, candidates);
  const Player me = state.to_move();
  const auto start = std::chrono::steady_clock::now();
  int iterations = 0;
  do {
    const int selected = select(tree, config_.params.c_explore);
    if (tree.node(selected).terminal) {
      const SearchNode& sel = tree.node(selected);
      backpropagate(tree, selected, terminal_score(sel.state, sel.mover));
    } else {
      const int child = expand(tree, selected);
      const SearchNode& leaf = tree.node(child);
      double reward;
      if (leaf.terminal) {
        reward = terminal_score(leaf.state, leaf.mover);
      } else {
        const double r = playout(leaf.state, me);
        reward = leaf.mover == me ? r : -r;
      }
      backpropagate(tree, child, reward);
    }
    ++iterations;
  } while (!OutOfBudget(iterations, start));

  stats_.iterations = iterations;
  stats_.tree_size = tree.size();
  const auto best = best_ratio(tree, candidates);
  Move chosen;
  if (!best.empty()) {
    chosen = Draw(best);
  } else {
    stats_.used_fallback = true;
    chosen = preselected.empty() ? Draw(candidates) : preselected.front().move;
  }
  return SearchOutcome{std::move(tree), std::move(candidates), chosen};
}

}  // namespace boop
