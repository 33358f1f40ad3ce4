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

#ifndef BOOP_ENGINE_H_
#define BOOP_ENGINE_H_

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boop {

inline constexpr int kBoardSize = 6;
inline constexpr int kNumSquares = kBoardSize * kBoardSize;
inline constexpr int kPiecesPerPlayer = 8;
// Every (kind, square) pair; the upper bound on the placement move space.
inline constexpr int kNumMoveSlots = 2 * kNumSquares;

enum class Player : std::uint8_t { kOne = 0, kTwo = 1 };
enum class PieceKind : std::uint8_t { kSmall = 0, kLarge = 1 };

constexpr Player Opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
constexpr int ToIndex(Player p) { return static_cast<int>(p); }

std::string ToString(Player p);  // "P1" / "P2"
std::optional<Player> ParsePlayer(std::string_view text);

// A board coordinate. Rows and columns run 1..6; columns print as a..f.
struct Square {
  int row = 1;
  int col = 1;

  constexpr int index() const { return (row - 1) * kBoardSize + (col - 1); }
  static constexpr Square FromIndex(int index) {
    return Square{index / kBoardSize + 1, index % kBoardSize + 1};
  }
  static constexpr bool OnBoard(int row, int col) {
    return row >= 1 && row <= kBoardSize && col >= 1 && col <= kBoardSize;
  }
  constexpr bool IsBorder() const {
    return row == 1 || row == kBoardSize || col == 1 || col == kBoardSize;
  }
  // The 4x4 interior block, b2..e5.
  constexpr bool IsCenter() const { return !IsBorder(); }

  std::string ToString() const;
  static std::optional<Square> Parse(std::string_view text);

  friend constexpr bool operator==(const Square&, const Square&) = default;
};

struct Piece {
  Player owner;
  PieceKind kind;
  friend constexpr bool operator==(const Piece&, const Piece&) = default;
};

class Board {
 public:
  std::optional<Piece> at(Square sq) const { return Decode(cells_[sq.index()]); }
  std::optional<Piece> at(int index) const { return Decode(cells_[index]); }
  bool IsEmpty(Square sq) const { return cells_[sq.index()] == 0; }
  bool IsEmpty(int index) const { return cells_[index] == 0; }

  void Set(Square sq, Piece piece) {
    Clear(sq);
    cells_[sq.index()] = Encode(piece);
    bits_[ToIndex(piece.owner)][static_cast<int>(piece.kind)] |= Bit(sq);
  }
  void Clear(Square sq) {
    cells_[sq.index()] = 0;
    for (auto& by_kind : bits_) {
      for (auto& b : by_kind) b &= ~Bit(sq);
    }
  }

  int Count(Player owner) const { return std::popcount(pieces(owner)); }
  int Count(Player owner, PieceKind kind) const { return std::popcount(pieces(owner, kind)); }

  // Square sets: bit i is square index i.
  std::uint64_t pieces(Player owner) const {
    return bits_[ToIndex(owner)][0] | bits_[ToIndex(owner)][1];
  }
  std::uint64_t pieces(Player owner, PieceKind kind) const {
    return bits_[ToIndex(owner)][static_cast<int>(kind)];
  }

  // Raw cell codes: 0 empty, otherwise 1 + 2 * owner + kind.
  const std::array<std::uint8_t, kNumSquares>& cells() const { return cells_; }

  friend bool operator==(const Board& a, const Board& b) { return a.cells_ == b.cells_; }

 private:
  static constexpr std::uint64_t Bit(Square sq) { return std::uint64_t{1} << sq.index(); }
  static constexpr std::uint8_t Encode(Piece p) {
    return static_cast<std::uint8_t>(1 + 2 * static_cast<int>(p.owner) +
                                     static_cast<int>(p.kind));
  }
  static constexpr std::optional<Piece> Decode(std::uint8_t code) {
    if (code == 0) return std::nullopt;
    return Piece{static_cast<Player>((code - 1) / 2),
                 static_cast<PieceKind>((code - 1) % 2)};
  }

  std::array<std::uint8_t, kNumSquares> cells_{};
  std::array<std::array<std::uint64_t, 2>, 2> bits_{};  // [owner][kind]
};

struct Pool {
  int small = 0;
  int large = 0;

  int total() const { return small + large; }
  int of(PieceKind kind) const { return kind == PieceKind::kSmall ? small : large; }
  int& of(PieceKind kind) { return kind == PieceKind::kSmall ? small : large; }
  friend bool operator==(const Pool&, const Pool&) = default;
};

// Placement of one pooled piece; notation "S@c3" / "L@f6".
struct Move {
  PieceKind piece = PieceKind::kSmall;
  Square at;

  // Dense id in 0..71: square-major, Small before Large.
  constexpr int slot() const { return 2 * at.index() + static_cast<int>(piece); }
  static constexpr Move FromSlot(int slot) {
    return Move{static_cast<PieceKind>(slot % 2), Square::FromIndex(slot / 2)};
  }

  std::string ToString() const;
  static std::optional<Move> Parse(std::string_view text);

  friend constexpr bool operator==(const Move&, const Move&) = default;
};

// Three adjacent collinear squares, listed from the row-major-first square.
using Alignment = std::array<Square, 3>;

struct DecisionChoice {
  enum class Kind : std::uint8_t { kRemoveAlignment, kGraduateOne };

  Kind kind = Kind::kGraduateOne;
  // RemoveAlignment uses all three; GraduateOne uses squares[0] only.
  Alignment squares{};

  static DecisionChoice Remove(const Alignment& a) {
    return DecisionChoice{Kind::kRemoveAlignment, a};
  }
  static DecisionChoice Graduate(Square sq) {
    return DecisionChoice{Kind::kGraduateOne, {sq, sq, sq}};
  }
  std::span<const Square> involved() const;

  // "remove:a1,b1,c1" / "graduate:b2"
  std::string ToString() const;
  static std::optional<DecisionChoice> Parse(std::string_view text);

  friend bool operator==(const DecisionChoice& a, const DecisionChoice& b);
};

enum class Phase : std::uint8_t { kPlacement, kAwaitingDecision };

class RuleError : public std::runtime_error {
 public:
  enum class Reason {
    kOccupiedSquare,
    kPieceUnavailable,
    kWrongPhase,
    kGameOver,
    kChoiceNotOffered,
    kInvalidPosition,
  };
  RuleError(Reason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

std::string ToString(RuleError::Reason reason);

// Immutable game position. All rule operations return a new value.
class GameState {
 public:
  static GameState Initial();

  // Builds an arbitrary placement-phase position, for tests and analysis.
  // Throws RuleError(kInvalidPosition) if piece conservation is violated.
  static GameState FromPosition(const Board& board, const std::array<Pool, 2>& pools,
                                Player to_move, int ply = 0);

  const Board& board() const { return board_; }
  const Pool& pool(Player p) const { return pools_[ToIndex(p)]; }
  Player to_move() const { return to_move_; }
  Phase phase() const { return phase_; }
  const std::vector<DecisionChoice>& pending_choices() const { return choices_; }
  std::optional<Player> result() const { return result_; }
  bool is_terminal() const { return result_.has_value(); }
  int ply() const { return ply_; }

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  friend GameState apply_move(const GameState&, Move);
  friend GameState resolve_decision(const GameState&, const DecisionChoice&);
  friend GameState ApplyTurn(const GameState&, Move);

  void EndTurn();
  void PassTurn();

  Board board_;
  std::array<Pool, 2> pools_{};
  Player to_move_ = Player::kOne;
  Phase phase_ = Phase::kPlacement;
  std::vector<DecisionChoice> choices_;
  std::optional<Player> result_;
  int ply_ = 0;
};

struct Boop {
  Square from;
  std::optional<Square> to;  // nullopt: pushed off the board
  friend bool operator==(const Boop&, const Boop&) = default;
};

// Placement moves, square-major (row-major), Small before Large.
// Throws RuleError outside the placement phase or on a finished game.
std::vector<Move> legal_moves(const GameState& state);

// Displacements caused by the piece just placed at `placed`. Blocked or
// unpushable neighbours are omitted.
std::vector<Boop> compute_boops(const Board& board, Square placed, PieceKind placed_kind);

// Throws RuleError with the rejection reason if `move` is illegal.
GameState apply_move(const GameState& state, Move move);

// Throws RuleError if not awaiting a decision or `choice` was not offered.
GameState resolve_decision(const GameState& state, const DecisionChoice& choice);

std::vector<Alignment> find_alignments(const Board& board, Player player);

// Picks the choice touching the most border squares; first listed wins ties.
const DecisionChoice& border_choice(std::span<const DecisionChoice> choices, const Board& board);

std::optional<Player> game_result(const GameState& state);

// apply_move followed by border_choice for any decision it opens. This is
// the transition every agent uses when simulating.
GameState ApplyTurn(const GameState& state, Move move);

// True if `player` has three Large pieces in a line.
bool HasLargeAlignment(const Board& board, Player player);

// All 80 three-square windows, each listed from its row-major-first square.
const std::vector<Alignment>& AllWindows3();
// All 110 two-square adjacent pairs.
const std::vector<std::array<Square, 2>>& AllWindows2();

// Number of straight windows of `length` (2 or 3) lying entirely inside the
// square set `mask`, over the four line directions.
int CountWindows(std::uint64_t mask, int length);
// Square set of the 16 interior squares.
inline constexpr std::uint64_t kCenterMask = [] {
  std::uint64_t mask = 0;
  for (int row = 2; row <= kBoardSize - 1; ++row) {
    for (int col = 2; col <= kBoardSize - 1; ++col) {
      mask |= std::uint64_t{1} << Square{row, col}.index();
    }
  }
  return mask;
}();

}  // namespace boop

#endif  // BOOP_ENGINE_H_
