#include "bbtetris/features.hpp"

#include <cstring>
#include <stdexcept>

namespace bbtetris {

int eroded_piece_cells(int reward, std::uint32_t delete_line, int drop_height, const PieceShape& shape) noexcept {
  if (reward == 0) return 0;
  const std::uint32_t rows = delete_line >> drop_height;
  int cells = 0;
  for (int i = 0; i < shape.width; ++i) cells += popcount(rows & shape.cols[i]);
  return cells * reward;
}

int eroded_piece_cells(const GameState& state, const PieceShape& shape) noexcept {
  return eroded_piece_cells(state.reward, state.delete_line, state.drop_height, shape);
}

int row_transitions(const Board& board) noexcept {
  const std::uint32_t full = board.playfield_mask();
  const auto& c = board.cols;
  int n = popcount(c[0] ^ full) + popcount(c[kBoardWidth - 1] ^ full);
  for (int i = 0; i + 1 < kBoardWidth; ++i) n += popcount(c[i] ^ c[i + 1]);
  return n;
}

int column_transitions(const Board& board) noexcept {
  int n = 0;
  for (auto c : board.cols) n += popcount(c ^ ((c << 1) + 1u));
  return n;
}

int holes(const Board& board) noexcept {
  int n = 0;
  for (auto c : board.cols) {
    if (c > 1) n += popcount(fill_below_highest(c) ^ c);
  }
  return n;
}

// Each empty cell flanked left and right adds the length of the empty run
// (counted from below) that ends at it. Board edges count as filled.
int board_well(const Board& board) noexcept {
  const std::uint32_t full = board.playfield_mask();
  const auto& c = board.cols;
  int total = 0;
  for (int i = 0; i < kBoardWidth; ++i) {
    const std::uint32_t left = i == 0 ? full : c[i - 1];
    const std::uint32_t right = i == kBoardWidth - 1 ? full : c[i + 1];
    std::uint32_t wells = ~c[i] & left & right & full;
    while (wells != 0) {
      const int row = std::countr_zero(wells);
      const std::uint32_t below = c[i] & low_mask(row);
      total += below != 0 ? row - column_top_index(below) : row + 1;
      wells &= wells - 1;
    }
  }
  return total;
}

// Filled cells above the lowest empty cell of each column.
int hole_depth(const Board& board) noexcept {
  int n = 0;
  for (auto c : board.cols) n += popcount(c & ~(c ^ (c + 1u)));
  return n;
}

int rows_with_holes(const Board& board) noexcept {
  std::uint32_t rows = 0;
  for (auto c : board.cols) {
    if (c > 1) rows |= fill_below_highest(c) ^ c;
  }
  return popcount(rows);
}

int pattern_diversity(const Board& board) noexcept {
  std::array<int, kBoardWidth> h{};
  for (int i = 0; i < kBoardWidth; ++i) h[i] = board.cols[i] != 0 ? column_top_index(board.cols[i]) : -1;
  unsigned seen = 0;
  for (int i = 0; i + 1 < kBoardWidth; ++i) {
    const int d = h[i] - h[i + 1];
    if (d >= -2 && d <= 2) seen |= 1u << (d + 2);
  }
  return std::popcount(seen);
}

// Single pass over the columns; agrees with the per-feature kernels above.
FeatureVector board_features(const Board& after, double landing, double eroded) noexcept {
  const std::uint32_t full = after.playfield_mask();
  const auto& c = after.cols;
  int row_t = popcount(c[0] ^ full) + popcount(c[kBoardWidth - 1] ^ full);
  int col_t = 0, hole_n = 0, depth = 0, wells = 0;
  std::uint32_t hole_rows = 0;
  unsigned seen = 0;
  int prev_h = 0;
  for (int i = 0; i < kBoardWidth; ++i) {
    const std::uint32_t x = c[i];
    if (i + 1 < kBoardWidth) row_t += popcount(x ^ c[i + 1]);
    col_t += popcount(x ^ ((x << 1) + 1u));
    depth += popcount(x & ~(x ^ (x + 1u)));
    if (x > 1) {
      const std::uint32_t gaps = fill_below_highest(x) ^ x;
      hole_n += popcount(gaps);
      hole_rows |= gaps;
    }
    const int h = x != 0 ? column_top_index(x) : -1;
    if (i > 0) {
      const int d = prev_h - h;
      if (d >= -2 && d <= 2) seen |= 1u << (d + 2);
    }
    prev_h = h;

    const std::uint32_t left = i == 0 ? full : c[i - 1];
    const std::uint32_t right = i == kBoardWidth - 1 ? full : c[i + 1];
    std::uint32_t w = ~x & left & right & full;
    while (w != 0) {
      const int row = std::countr_zero(w);
      const std::uint32_t below = x & low_mask(row);
      wells += below != 0 ? row - column_top_index(below) : row + 1;
      w &= w - 1;
    }
  }
  FeatureVector f;
  f << landing, eroded, row_t, col_t, hole_n, wells, depth, popcount(hole_rows), std::popcount(seen);
  return f;
}

FeatureVector empty_board_features(int height) { return board_features(Board::empty(height), 0.0, 0.0); }

TransitionFeatures features_of_transition(const Board& pre, const PieceShape& shape, int column) noexcept {
  TransitionFeatures t;
  const auto placed = drop(pre, shape, column);
  const auto cleared = clear_lines(placed.board);
  t.after = cleared.board;
  t.reward = cleared.lines;
  t.drop_height = placed.drop_height;
  t.delete_line = delete_line_mask(placed.board);
  t.done = is_game_over(cleared.board);
  t.features = board_features(t.after, landing_height(t.drop_height, shape.height),
                              eroded_piece_cells(t.reward, t.delete_line, t.drop_height, shape));
  return t;
}

AfterstateBatch afterstate_batch(const GameState& state) {
  AfterstateBatch batch;
  const auto& def = piece_def(state.piece);
  batch.action_count = def.action_size;
  for (int a = 0; a < def.action_size; ++a) {
    const auto [rotation, column] = decode_action(state.piece, a);
    const auto t = features_of_transition(state.board, def.shape(rotation), column);
    batch.features.row(a) = t.features.transpose();
    batch.mask[a] = 1;
    batch.terminal[a] = t.done ? 1 : 0;
  }
  return batch;
}

std::vector<std::uint8_t> AfterstateBatch::to_bytes() const {
  std::vector<std::uint8_t> out(kWireBytes);
  std::memcpy(out.data(), features.data(), kBatchValues * sizeof(double));
  std::memcpy(out.data() + kBatchValues * sizeof(double), mask.data(), kMaxActions);
  return out;
}

AfterstateBatch AfterstateBatch::from_bytes(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() != kWireBytes) throw std::invalid_argument("afterstate batch payload must be 2482 bytes");
  AfterstateBatch b;
  std::memcpy(b.features.data(), bytes.data(), kBatchValues * sizeof(double));
  std::memcpy(b.mask.data(), bytes.data() + kBatchValues * sizeof(double), kMaxActions);
  b.action_count = 0;
  for (auto m : b.mask) {
    if (m > 1) throw std::invalid_argument("mask bytes must be 0 or 1");
    b.action_count += m;
  }
  return b;
}

}  // namespace bbtetris
