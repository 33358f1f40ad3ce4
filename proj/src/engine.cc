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

#include "boop/engine.h"

#include <algorithm>
#include <charconv>

namespace boop {
namespace {

constexpr std::array<std::array<int, 2>, 8> kNeighbourDirs = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
}};

// Line directions, each stepping forward in row-major order.
constexpr std::array<std::array<int, 2>, 4> kLineDirs = {{
    {0, 1}, {1, 0}, {1, 1}, {1, -1},
}};

std::vector<Alignment> BuildWindows3() {
  std::vector<Alignment> out;
  for (int i = 0; i < kNumSquares; ++i) {
    const Square s = Square::FromIndex(i);
    for (const auto& [dr, dc] : kLineDirs) {
      if (!Square::OnBoard(s.row + 2 * dr, s.col + 2 * dc)) continue;
      out.push_back({s, Square{s.row + dr, s.col + dc}, Square{s.row + 2 * dr, s.col + 2 * dc}});
    }
  }
  return out;
}

std::vector<std::array<Square, 2>> BuildWindows2() {
  std::vector<std::array<Square, 2>> out;
  for (int i = 0; i < kNumSquares; ++i) {
    const Square s = Square::FromIndex(i);
    for (const auto& [dr, dc] : kLineDirs) {
      if (!Square::OnBoard(s.row + dr, s.col + dc)) continue;
      out.push_back({s, Square{s.row + dr, s.col + dc}});
    }
  }
  return out;
}

// One line direction as an index step, with the squares where windows of
// length 2 and 3 may start.
struct LineShift {
  int step;
  std::array<std::uint64_t, 2> starts;
};

constexpr std::uint64_t StartMask(int dr, int dc, int length) {
  std::uint64_t mask = 0;
  for (int row = 1; row <= kBoardSize; ++row) {
    for (int col = 1; col <= kBoardSize; ++col) {
      if (Square::OnBoard(row + (length - 1) * dr, col + (length - 1) * dc)) {
        mask |= std::uint64_t{1} << Square{row, col}.index();
      }
    }
  }
  return mask;
}

constexpr LineShift MakeLineShift(int dr, int dc) {
  return {dr * kBoardSize + dc, {StartMask(dr, dc, 2), StartMask(dr, dc, 3)}};
}

constexpr std::array<LineShift, 4> kLineShifts = {MakeLineShift(0, 1), MakeLineShift(1, 0),
                                                  MakeLineShift(1, 1), MakeLineShift(1, -1)};

const std::vector<std::uint64_t>& WindowMasks3() {
  static const std::vector<std::uint64_t> masks = [] {
    std::vector<std::uint64_t> out;
    for (const Alignment& w : AllWindows3()) {
      std::uint64_t m = 0;
      for (const Square& sq : w) m |= std::uint64_t{1} << sq.index();
      out.push_back(m);
    }
    return out;
  }();
  return masks;
}

std::string_view KindLetter(PieceKind k) { return k == PieceKind::kSmall ? "S" : "L"; }

}  // namespace

std::string ToString(Player p) { return p == Player::kOne ? "P1" : "P2"; }

std::optional<Player> ParsePlayer(std::string_view text) {
  if (text == "P1") return Player::kOne;
  if (text == "P2") return Player::kTwo;
  return std::nullopt;
}

std::string Square::ToString() const {
  std::string s;
  s += static_cast<char>('a' + col - 1);
  s += static_cast<char>('0' + row);
  return s;
}

std::optional<Square> Square::Parse(std::string_view text) {
  if (text.size() != 2) return std::nullopt;
  const int col = text[0] - 'a' + 1;
  const int row = text[1] - '0';
  if (!OnBoard(row, col)) return std::nullopt;
  return Square{row, col};
}

std::string Move::ToString() const {
  return std::string(KindLetter(piece)) + "@" + at.ToString();
}

std::optional<Move> Move::Parse(std::string_view text) {
  if (text.size() != 4 || text[1] != '@') return std::nullopt;
  PieceKind kind;
  if (text[0] == 'S') {
    kind = PieceKind::kSmall;
  } else if (text[0] == 'L') {
    kind = PieceKind::kLarge;
  } else {
    return std::nullopt;
  }
  const auto sq = Square::Parse(text.substr(2));
  if (!sq) return std::nullopt;
  return Move{kind, *sq};
}

std::span<const Square> DecisionChoice::involved() const {
  if (kind == Kind::kGraduateOne) return std::span<const Square>(squares.data(), 1);
  return std::span<const Square>(squares.data(), 3);
}

bool operator==(const DecisionChoice& a, const DecisionChoice& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == DecisionChoice::Kind::kGraduateOne) return a.squares[0] == b.squares[0];
  return a.squares == b.squares;
}

std::string DecisionChoice::ToString() const {
  if (kind == Kind::kGraduateOne) return "graduate:" + squares[0].ToString();
  return "remove:" + squares[0].ToString() + "," + squares[1].ToString() + "," +
         squares[2].ToString();
}

std::optional<DecisionChoice> DecisionChoice::Parse(std::string_view text) {
  constexpr std::string_view kGrad = "graduate:";
  constexpr std::string_view kRemove = "remove:";
  if (text.starts_with(kGrad)) {
    const auto sq = Square::Parse(text.substr(kGrad.size()));
    if (!sq) return std::nullopt;
    return Graduate(*sq);
  }
  if (!text.starts_with(kRemove)) return std::nullopt;
  text.remove_prefix(kRemove.size());
  if (text.size() != 8 || text[2] != ',' || text[5] != ',') return std::nullopt;
  Alignment a;
  for (int i = 0; i < 3; ++i) {
    const auto sq = Square::Parse(text.substr(3 * i, 2));
    if (!sq) return std::nullopt;
    a[i] = *sq;
  }
  // Must be a genuine window: collinear, adjacent, forward-ordered.
  const auto& windows = AllWindows3();
  if (std::find(windows.begin(), windows.end(), a) == windows.end()) return std::nullopt;
  return Remove(a);
}

std::string ToString(RuleError::Reason reason) {
  switch (reason) {
    case RuleError::Reason::kOccupiedSquare:
      return "occupied square";
    case RuleError::Reason::kPieceUnavailable:
      return "piece kind unavailable";
    case RuleError::Reason::kWrongPhase:
      return "wrong phase";
    case RuleError::Reason::kGameOver:
      return "game over";
    case RuleError::Reason::kChoiceNotOffered:
      return "choice not offered";
    case RuleError::Reason::kInvalidPosition:
      return "invalid position";
  }
  return "unknown";
}

const std::vector<Alignment>& AllWindows3() {
  static const std::vector<Alignment> windows = BuildWindows3();
  return windows;
}

const std::vector<std::array<Square, 2>>& AllWindows2() {
  static const std::vector<std::array<Square, 2>> windows = BuildWindows2();
  return windows;
}

GameState GameState::Initial() {
  GameState s;
  s.pools_[0].small = kPiecesPerPlayer;
  s.pools_[1].small = kPiecesPerPlayer;
  return s;
}

GameState GameState::FromPosition(const Board& board, const std::array<Pool, 2>& pools,
                                  Player to_move, int ply) {
  for (Player p : {Player::kOne, Player::kTwo}) {
    const Pool& pool = pools[ToIndex(p)];
    if (pool.small < 0 || pool.large < 0 ||
        board.Count(p) + pool.total() != kPiecesPerPlayer) {
      throw RuleError(RuleError::Reason::kInvalidPosition,
                      "piece conservation violated for " + ToString(p));
    }
  }
  GameState s;
  s.board_ = board;
  s.pools_ = pools;
  s.to_move_ = to_move;
  s.ply_ = ply;
  return s;
}

std::vector<Move> legal_moves(const GameState& state) {
  if (state.is_terminal()) throw RuleError(RuleError::Reason::kGameOver, "game is over");
  if (state.phase() != Phase::kPlacement) {
    throw RuleError(RuleError::Reason::kWrongPhase, "awaiting a decision, not a placement");
  }
  const Pool& pool = state.pool(state.to_move());
  std::vector<Move> moves;
  moves.reserve(kNumMoveSlots);
  for (int i = 0; i < kNumSquares; ++i) {
    if (!state.board().IsEmpty(i)) continue;
    const Square sq = Square::FromIndex(i);
    if (pool.small > 0) moves.push_back(Move{PieceKind::kSmall, sq});
    if (pool.large > 0) moves.push_back(Move{PieceKind::kLarge, sq});
  }
  return moves;
}

std::vector<Boop> compute_boops(const Board& board, Square placed, PieceKind placed_kind) {
  std::vector<Boop> boops;
  for (const auto& [dr, dc] : kNeighbourDirs) {
    const int nr = placed.row + dr;
    const int nc = placed.col + dc;
    if (!Square::OnBoard(nr, nc)) continue;
    const Square from{nr, nc};
    const auto target = board.at(from);
    if (!target) continue;
    if (placed_kind == PieceKind::kSmall && target->kind == PieceKind::kLarge) continue;
    const int tr = nr + dr;
    const int tc = nc + dc;
    if (!Square::OnBoard(tr, tc)) {
      boops.push_back({from, std::nullopt});
      continue;
    }
    const Square to{tr, tc};
    if (!board.IsEmpty(to)) continue;
    boops.push_back({from, to});
  }
  return boops;
}

std::vector<Alignment> find_alignments(const Board& board, Player player) {
  std::vector<Alignment> out;
  const std::uint64_t own = board.pieces(player);
  if (CountWindows(own, 3) == 0) return out;
  const auto& masks = WindowMasks3();
  const auto& windows = AllWindows3();
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if ((own & masks[i]) == masks[i]) out.push_back(windows[i]);
  }
  return out;
}

bool HasLargeAlignment(const Board& board, Player player) {
  return CountWindows(board.pieces(player, PieceKind::kLarge), 3) > 0;
}

int CountWindows(std::uint64_t mask, int length) {
  int count = 0;
  for (const LineShift& line : kLineShifts) {
    std::uint64_t run = mask & line.starts[length - 2];
    for (int i = 1; i < length; ++i) run &= mask >> (i * line.step);
    count += std::popcount(run);
  }
  return count;
}

const DecisionChoice& border_choice(std::span<const DecisionChoice> choices, const Board&) {
  if (choices.empty()) throw std::invalid_argument("border_choice: no choices");
  const DecisionChoice* best = &choices.front();
  int best_count = -1;
  for (const DecisionChoice& c : choices) {
    int count = 0;
    for (const Square& sq : c.involved()) count += sq.IsBorder() ? 1 : 0;
    if (count > best_count) {
      best_count = count;
      best = &c;
    }
  }
  return *best;
}

std::optional<Player> game_result(const GameState& state) { return state.result(); }

void GameState::PassTurn() {
  phase_ = Phase::kPlacement;
  choices_.clear();
  to_move_ = Opponent(to_move_);
}

// End-of-turn resolution for the player who just placed.
void GameState::EndTurn() {
  const Player mover = to_move_;
  if (HasLargeAlignment(board_, mover) ||
      board_.Count(mover, PieceKind::kLarge) == kPiecesPerPlayer) {
    result_ = mover;
    return;
  }
  // A boop can complete the opponent's Large line.
  if (HasLargeAlignment(board_, Opponent(mover))) {
    result_ = Opponent(mover);
    return;
  }
  const auto alignments = find_alignments(board_, mover);
  if (alignments.size() == 1) {
    Pool& pool = pools_[ToIndex(mover)];
    for (const Square& sq : alignments.front()) {
      board_.Clear(sq);
      ++pool.large;
    }
    PassTurn();
    return;
  }
  choices_.clear();
  if (alignments.size() > 1) {
    for (const Alignment& a : alignments) choices_.push_back(DecisionChoice::Remove(a));
  } else if (board_.Count(mover) == kPiecesPerPlayer) {
    for (int i = 0; i < kNumSquares; ++i) {
      const auto piece = board_.at(i);
      if (piece && piece->owner == mover) {
        choices_.push_back(DecisionChoice::Graduate(Square::FromIndex(i)));
      }
    }
  }
  if (choices_.empty()) {
    PassTurn();
  } else {
    phase_ = Phase::kAwaitingDecision;
  }
}

GameState apply_move(const GameState& state, Move move) {
  if (state.is_terminal()) throw RuleError(RuleError::Reason::kGameOver, "game is over");
  if (state.phase() != Phase::kPlacement) {
    throw RuleError(RuleError::Reason::kWrongPhase, "awaiting a decision, not a placement");
  }
  if (!state.board().IsEmpty(move.at)) {
    throw RuleError(RuleError::Reason::kOccupiedSquare, move.at.ToString() + " is occupied");
  }
  const Player mover = state.to_move();
  if (state.pool(mover).of(move.piece) <= 0) {
    throw RuleError(RuleError::Reason::kPieceUnavailable,
                    "no " + std::string(move.piece == PieceKind::kSmall ? "small" : "large") +
                        " piece in pool");
  }

  GameState next = state;
  --next.pools_[ToIndex(mover)].of(move.piece);
  next.board_.Set(move.at, Piece{mover, move.piece});
  const Board before = next.board_;
  for (const Boop& b : compute_boops(before, move.at, move.piece)) {
    const Piece pushed = *before.at(b.from);
    next.board_.Clear(b.from);
    if (b.to) {
      next.board_.Set(*b.to, pushed);
    } else {
      ++next.pools_[ToIndex(pushed.owner)].of(pushed.kind);
    }
  }
  ++next.ply_;
  next.EndTurn();
  return next;
}

GameState resolve_decision(const GameState& state, const DecisionChoice& choice) {
  if (state.is_terminal()) throw RuleError(RuleError::Reason::kGameOver, "game is over");
  if (state.phase() != Phase::kAwaitingDecision) {
    throw RuleError(RuleError::Reason::kWrongPhase, "no decision pending");
  }
  const auto& offered = state.pending_choices();
  if (std::find(offered.begin(), offered.end(), choice) == offered.end()) {
    throw RuleError(RuleError::Reason::kChoiceNotOffered,
                    choice.ToString() + " is not an offered choice");
  }
  GameState next = state;
  const Player mover = state.to_move();
  for (const Square& sq : choice.involved()) {
    next.board_.Clear(sq);
    ++next.pools_[ToIndex(mover)].large;
  }
  // Removal cannot create a line, but the rule says victory is checked at turn end.
  if (HasLargeAlignment(next.board_, mover)) {
    next.result_ = mover;
    next.choices_.clear();
    next.phase_ = Phase::kPlacement;
    return next;
  }
  next.PassTurn();
  return next;
}

GameState ApplyTurn(const GameState& state, Move move) {
  GameState next = apply_move(state, move);
  if (next.phase() == Phase::kAwaitingDecision) {
    next = resolve_decision(next, border_choice(next.pending_choices(), next.board()));
  }
  return next;
}

}  // namespace boop
