#include "bbtetris/game.hpp"

#include <stdexcept>
#include <string>

namespace bbtetris {

WireState GameState::to_wire() const noexcept {
  WireState w{};
  for (int i = 0; i < kBoardWidth; ++i) w[i] = static_cast<std::int32_t>(board.cols[i]);
  w[slot::kReward] = reward;
  w[slot::kScore] = score;
  w[slot::kPiece] = piece;
  w[slot::kDropHeight] = drop_height;
  w[slot::kDeleteLine] = static_cast<std::int32_t>(delete_line);
  return w;
}

GameState GameState::from_wire(const WireState& wire, int height) {
  GameState s;
  s.board = Board::empty(height);
  const std::uint32_t allowed = low_mask(height + kHeadroom);
  for (int i = 0; i < kBoardWidth; ++i) {
    const auto c = static_cast<std::uint32_t>(wire[i]);
    if ((c & ~allowed) != 0) throw std::invalid_argument("column " + std::to_string(i) + " has cells above headroom");
    s.board.cols[i] = c;
  }
  s.reward = wire[slot::kReward];
  s.score = wire[slot::kScore];
  s.piece = wire[slot::kPiece];
  s.drop_height = wire[slot::kDropHeight];
  s.delete_line = static_cast<std::uint32_t>(wire[slot::kDeleteLine]);
  if (s.piece < 0 || s.piece >= kNumPieces) throw std::invalid_argument("piece slot out of range");
  if (s.reward != popcount(s.delete_line)) throw std::invalid_argument("reward slot disagrees with delete-line mask");
  if (s.score < 0 || s.drop_height < 0) throw std::invalid_argument("negative score or drop height");
  return s;
}

GameState reset(PieceGenerator& gen, int height) {
  GameState s;
  s.board = Board::empty(height);
  s.piece = gen.next();
  return s;
}

StepResult apply_action(const GameState& state, int action, PieceGenerator& gen) {
  const int count = legal_action_count(state.piece);
  if (action < 0 || action >= count) {
    throw std::out_of_range("action " + std::to_string(action) + " outside [0, " + std::to_string(count) +
                            ") for piece " + piece_name(state.piece));
  }
  if (is_game_over(state.board)) throw std::logic_error("apply_action on a finished game");

  const auto [rotation, column] = decode_action(state.piece, action);
  const auto placed = drop(state.board, piece_def(state.piece).shape(rotation), column);
  const auto cleared = clear_lines(placed.board);

  StepResult out;
  out.next = state;
  out.next.board = cleared.board;
  out.next.drop_height = placed.drop_height;
  out.next.delete_line = delete_line_mask(placed.board);
  out.next.reward = cleared.lines;
  out.next.score = state.score + cleared.lines;
  out.reward = cleared.lines;
  out.done = is_game_over(cleared.board);
  if (!out.done) out.next.piece = gen.next();
  return out;
}

Game::Game(int height, GeneratorKind kind, std::uint64_t seed)
    : height_(height), gen_(kind, seed), state_{Board::empty(height)} {}

const GameState& Game::reset() {
  state_ = bbtetris::reset(gen_, height_);
  done_ = false;
  return state_;
}

StepResult Game::step(int action) {
  auto r = apply_action(state_, action, gen_);
  state_ = r.next;
  done_ = r.done;
  return r;
}

}  // namespace bbtetris
