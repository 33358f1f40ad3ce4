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

#include "boop/heuristic.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace boop {
namespace {

double MaxAbs(const std::array<double, 3>& w) {
  return std::max({std::abs(w[0]), std::abs(w[1]), std::abs(w[2])});
}

}  // namespace

double HeuristicWeights::Max() const {
  const double n = kPiecesPerPlayer;
  return n * (std::abs(count) + std::abs(center) + std::abs(border) + std::abs(large_owned)) +
         kMaxPairWindows * MaxAbs(align2) + kMaxTripleWindows * MaxAbs(align3);
}

void HeuristicWeights::Validate() const {
  const std::array<double, 10> all = {count,     center,    border,    large_owned, align2[0],
                                      align2[1], align2[2], align3[0], align3[1],   align3[2]};
  for (double w : all) {
    if (!std::isfinite(w)) throw std::invalid_argument("heuristic weight is not finite");
  }
  if (!(Max() > 0.0)) throw std::invalid_argument("heuristic weights are all zero");
}

double RawScore(const GameState& state, Player perspective, const HeuristicWeights& weights) {
  const Board& board = state.board();
  const auto side = [&](Player p) {
    const std::uint64_t small = board.pieces(p, PieceKind::kSmall);
    const std::uint64_t large = board.pieces(p, PieceKind::kLarge);
    const std::uint64_t own = small | large;
    const int center = std::popcount(own & kCenterMask);
    const int count = std::popcount(own);
    double raw = weights.count * count + weights.center * center +
                 weights.border * (count - center) +
                 weights.large_owned * (std::popcount(large) + state.pool(p).large);
    for (int length : {2, 3}) {
      const auto& w = length == 2 ? weights.align2 : weights.align3;
      const int all = CountWindows(own, length);
      if (all == 0) continue;
      const int all_small = CountWindows(small, length);
      const int all_large = CountWindows(large, length);
      raw += w[static_cast<int>(Composition::kAllSmall)] * all_small +
             w[static_cast<int>(Composition::kMixed)] * (all - all_small - all_large) +
             w[static_cast<int>(Composition::kAllLarge)] * all_large;
    }
    return raw;
  };
  return side(perspective) - side(Opponent(perspective));
}

double evaluate(const GameState& state, Player perspective, const HeuristicWeights& weights) {
  if (state.is_terminal()) throw std::logic_error("evaluate called on a terminal state");
  const double score = RawScore(state, perspective, weights) / weights.Max();
  return std::clamp(score, -1.0, 1.0);
}

double terminal_score(const GameState& state, Player perspective) {
  if (!state.is_terminal()) throw std::logic_error("terminal_score called on a live state");
  return *state.result() == perspective ? 1.0 : -1.0;
}

double ScoreState(const GameState& state, Player perspective, const HeuristicWeights& weights) {
  return state.is_terminal() ? terminal_score(state, perspective)
                             : evaluate(state, perspective, weights);
}

}  // namespace boop
