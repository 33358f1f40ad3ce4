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

#ifndef BOOP_SOLVER_H_
#define BOOP_SOLVER_H_

#include <bitset>
#include <vector>

#include "boop/engine.h"
#include "boop/heuristic.h"

namespace boop {

// Moves excluded from the model by the Unmasked constraint.
class MoveMask {
 public:
  MoveMask() = default;
  static MoveMask AllBut(std::span<const Move> keep);

  void Add(Move m) { bits_.set(m.slot()); }
  void Remove(Move m) { bits_.reset(m.slot()); }
  bool Contains(Move m) const { return bits_.test(m.slot()); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

 private:
  std::bitset<kNumMoveSlots> bits_;
};

struct ScoredMove {
  Move move;
  double score = 0.0;  // mover's perspective, in [-1, 1]
  friend bool operator==(const ScoredMove&, const ScoredMove&) = default;
};

struct Solution {
  std::vector<ScoredMove> best;  // every maximizer, enumeration order
  std::vector<ScoredMove> all;   // descending score, ties in enumeration order
};

class NoLegalMoveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Complete solver for the move-selection problem of one position:
//   variables   piece kind, row, column
//   domains     {small, large} x {1..6} x {1..6}
//   constraints HasPiece, FreePosition, Unmasked
//   objective   heuristic score of the position after the move
// The space has at most 72 assignments, so it is enumerated exhaustively,
// checking constraints before the objective is evaluated.
class CopSolver {
 public:
  explicit CopSolver(HeuristicWeights weights = {});

  const HeuristicWeights& weights() const { return weights_; }

  // Assignments satisfying all constraints, square-major, Small before Large.
  // Requires the placement phase.
  std::vector<Move> valid_assignments(const GameState& state, const MoveMask& mask) const;

  // Scores every valid assignment. Throws NoLegalMoveError if there is none.
  Solution solve_all_best(const GameState& state, const MoveMask& mask) const;

  // Like solve_all_best(...).best, without building the sorted list.
  std::vector<ScoredMove> solve_best(const GameState& state, const MoveMask& mask) const;

  // The first min(m, #valid) entries of solve_all_best(state, {}).all.
  std::vector<ScoredMove> solve_top_m(const GameState& state, int m) const;

  // Objective value of one assignment: the mover's score after ApplyTurn.
  double Objective(const GameState& state, Move move) const;

 private:
  HeuristicWeights weights_;
};

}  // namespace boop

#endif  // BOOP_SOLVER_H_
