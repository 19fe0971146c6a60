#pragma once

#include <array>
#include <cstdint>

#include "bbtetris/board.hpp"
#include "bbtetris/generator.hpp"
#include "bbtetris/pieces.hpp"

namespace bbtetris {

inline constexpr int kStateSlots = 15;

/// The 15-slot wire record: columns 0-9, reward, score, current piece,
/// drop height, delete-line mask.
using WireState = std::array<std::int32_t, kStateSlots>;

namespace slot {
inline constexpr int kReward = 10;
inline constexpr int kScore = 11;
inline constexpr int kPiece = 12;
inline constexpr int kDropHeight = 13;
inline constexpr int kDeleteLine = 14;
}  // namespace slot

struct GameState {
  Board board;
  int reward = 0;
  int score = 0;
  int piece = 0;
  int drop_height = 0;
  // Rows cleared by the last placement, pre-clear coordinates.
  std::uint32_t delete_line = 0;

  WireState to_wire() const noexcept;

  /// Throws std::invalid_argument on a malformed record (bad height, piece
  /// index out of range, reward inconsistent with the delete-line mask).
  static GameState from_wire(const WireState& wire, int height);

  friend bool operator==(const GameState&, const GameState&) = default;
};

struct StepResult {
  GameState next;
  int reward = 0;
  bool done = false;
};

GameState reset(PieceGenerator& gen, int height = 10);

/// Places the current piece for `action`, clears lines and draws the next
/// piece unless the game ended. Throws std::out_of_range for an action index
/// outside the current piece's range and std::logic_error if `state` is
/// already terminal.
StepResult apply_action(const GameState& state, int action, PieceGenerator& gen);

inline bool is_game_over(const GameState& state) noexcept { return is_game_over(state.board); }

/// Single game instance plus its generator.
class Game {
 public:
  Game(int height, GeneratorKind kind, std::uint64_t seed);

  const GameState& reset();
  StepResult step(int action);

  const GameState& state() const noexcept { return state_; }
  bool done() const noexcept { return done_; }
  int height() const noexcept { return height_; }
  PieceGenerator& generator() noexcept { return gen_; }

 private:
  int height_;
  PieceGenerator gen_;
  GameState state_;
  bool done_ = false;
};

}  // namespace bbtetris
