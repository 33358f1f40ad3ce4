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

#ifndef BOOP_HEURISTIC_H_
#define BOOP_HEURISTIC_H_

#include "boop/engine.h"

namespace boop {

// Composition of a 2- or 3-square alignment window.
enum class Composition : int { kAllSmall = 0, kMixed = 1, kAllLarge = 2 };

// Weights of the state evaluation. Every term is a difference between the
// perspective player and the opponent. The default table orders the terms
// as: 3-Large line > 2-Large line > Large owned > center > count > border.
struct HeuristicWeights {
  double count = 1.0;        // pieces on the board
  double center = 2.0;       // pieces on the 16 interior squares
  double border = -0.5;      // pieces on the 20 edge squares
  double large_owned = 4.0;  // Large pieces possessed, board + pool
  std::array<double, 3> align2 = {1.0, 2.0, 6.0};   // adjacent pairs
  std::array<double, 3> align3 = {3.0, 5.0, 12.0};  // adjacent triples

  // Over-approximates max |raw score| by bounding every term on its own.
  double Max() const;
  // Throws std::invalid_argument on non-finite weights or an all-zero table.
  void Validate() const;

  friend bool operator==(const HeuristicWeights&, const HeuristicWeights&) = default;
};

// Largest number of collinear adjacent pairs / triples that 8 pieces of one
// player can form on the board.
inline constexpr int kMaxPairWindows = 17;
inline constexpr int kMaxTripleWindows = 6;

// Unnormalized weighted sum from `perspective`.
double RawScore(const GameState& state, Player perspective, const HeuristicWeights& weights);

// Normalized score in [-1, 1]. Throws std::logic_error on terminal states.
double evaluate(const GameState& state, Player perspective, const HeuristicWeights& weights);

// +1 if `perspective` won, -1 otherwise. Throws std::logic_error if not terminal.
double terminal_score(const GameState& state, Player perspective);

// terminal_score for finished games, evaluate otherwise.
double ScoreState(const GameState& state, Player perspective, const HeuristicWeights& weights);

}  // namespace boop

#endif  // BOOP_HEURISTIC_H_
