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

#include "boop/solver.h"

#include <algorithm>

namespace boop {

MoveMask MoveMask::AllBut(std::span<const Move> keep) {
  MoveMask mask;
  mask.bits_.set();
  for (const Move& m : keep) mask.bits_.reset(m.slot());
  return mask;
}

CopSolver::CopSolver(HeuristicWeights weights) : weights_(weights) { weights_.Validate(); }

std::vector<Move> CopSolver::valid_assignments(const GameState& state,
                                               const MoveMask& mask) const {
  if (state.phase() != Phase::kPlacement || state.is_terminal()) {
    throw RuleError(RuleError::Reason::kWrongPhase, "solver needs a live placement phase");
  }
  const Pool& pool = state.pool(state.to_move());
  std::vector<Move> out;
  for (int slot = 0; slot < kNumMoveSlots; ++slot) {
    const Move m = Move::FromSlot(slot);
    if (pool.of(m.piece) <= 0) continue;         // HasPiece
    if (!state.board().IsEmpty(m.at)) continue;  // FreePosition
    if (mask.Contains(m)) continue;              // Unmasked
    out.push_back(m);
  }
  return out;
}

double CopSolver::Objective(const GameState& state, Move move) const {
  return ScoreState(ApplyTurn(state, move), state.to_move(), weights_);
}

Solution CopSolver::solve_all_best(const GameState& state, const MoveMask& mask) const {
  const auto moves = valid_assignments(state, mask);
  if (moves.empty()) throw NoLegalMoveError("no valid assignment");
  Solution sol;
  sol.all.reserve(moves.size());
  for (const Move& m : moves) sol.all.push_back({m, Objective(state, m)});
  std::stable_sort(sol.all.begin(), sol.all.end(),
                   [](const ScoredMove& a, const ScoredMove& b) { return a.score > b.score; });
  const double top = sol.all.front().score;
  for (const ScoredMove& sm : sol.all) {
    if (sm.score == top) sol.best.push_back(sm);
  }
  // `all` kept ties in enumeration order, so `best` already is.
  return sol;
}

std::vector<ScoredMove> CopSolver::solve_best(const GameState& state,
                                              const MoveMask& mask) const {
  const auto moves = valid_assignments(state, mask);
  if (moves.empty()) throw NoLegalMoveError("no valid assignment");
  std::vector<ScoredMove> best;
  double top = -2.0;
  for (const Move& m : moves) {
    const double s = Objective(state, m);
    if (s > top) {
      top = s;
      best.clear();
    }
    if (s == top) best.push_back({m, s});
  }
  return best;
}

std::vector<ScoredMove> CopSolver::solve_top_m(const GameState& state, int m) const {
  if (m < 1) throw std::invalid_argument("solve_top_m: m must be >= 1");
  auto all = solve_all_best(state, MoveMask{}).all;
  if (static_cast<int>(all.size()) > m) all.resize(m);
  return all;
}

}  // namespace boop
