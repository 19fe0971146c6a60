#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "bbtetris/bits.hpp"
#include "bbtetris/pieces.hpp"

namespace bbtetris {

using Columns = std::array<std::uint32_t, kBoardWidth>;

// Rows of headroom above the playfield a placement may occupy.
inline constexpr int kHeadroom = 4;

/// Ten column words, bit k of column x is the cell at row k from the bottom.
/// Only heights 10 and 20 are supported.
struct Board {
  Columns cols{};
  int height = 10;

  /// Throws std::invalid_argument for heights other than 10 or 20.
  static Board empty(int height);

  constexpr std::uint32_t playfield_mask() const noexcept { return low_mask(height); }
  constexpr std::uint32_t overflow_band() const noexcept { return 0xfu << height; }

  int cell_count() const noexcept;

  friend bool operator==(const Board&, const Board&) = default;
};

bool valid_board_height(int height) noexcept;

// Multi-line picture, top row first, '#' for filled cells.
std::string to_string(const Board& board);

struct DropResult {
  Board board;
  int drop_height = 0;
};

constexpr bool collides(const Columns& cols, const PieceShape& shape, int column, int offset) noexcept {
  std::uint32_t hit = 0;
  for (int i = 0; i < shape.width; ++i) hit |= (shape.cols[i] << offset) & cols[column + i];
  return hit != 0;
}

// Resting offset of a piece dropped from above: start level with the tallest
// covered column, step up once on overlap, otherwise descend to first contact.
constexpr int landing_offset(const Columns& cols, const PieceShape& shape, int column) noexcept {
  int top = -1;
  for (int i = 0; i < shape.width; ++i) {
    const std::uint32_t c = cols[column + i];
    if (c != 0) {
      const int t = column_top_index(c);
      top = t > top ? t : top;
    }
  }
  if (top < 0) return 0;
  int d = top;
  if (collides(cols, shape, column, d)) return d + 1;
  while (d > 0 && !collides(cols, shape, column, d - 1)) --d;
  return d;
}

/// Requires 0 <= column <= 10 - shape.width.
constexpr DropResult drop(const Board& board, const PieceShape& shape, int column) noexcept {
  DropResult out{board, landing_offset(board.cols, shape, column)};
  for (int i = 0; i < shape.width; ++i) out.board.cols[column + i] |= shape.cols[i] << out.drop_height;
  return out;
}

/// Full rows of the playfield as a bitmask.
constexpr std::uint32_t delete_line_mask(const Board& board) noexcept {
  std::uint32_t mask = board.playfield_mask();
  for (auto c : board.cols) mask &= c;
  return mask;
}

struct ClearResult {
  Board board;
  int lines = 0;
};

// Removes the highest full row per pass and shifts the rows above it down.
constexpr ClearResult clear_lines(const Board& board) noexcept {
  ClearResult out{board, 0};
  std::uint32_t full = delete_line_mask(board);
  out.lines = popcount(full);
  while (full != 0) {
    const std::uint32_t upto = fill_below_highest(full);
    const std::uint32_t below = upto >> 1;
    const std::uint32_t above = ~upto;
    for (auto& c : out.board.cols) c = (c & below) | ((c & above) >> 1);
    full &= below;
  }
  return out;
}

// True when any column has a cell in the band just above the playfield.
constexpr bool is_game_over(const Board& board) noexcept {
  std::uint32_t hit = 0;
  for (auto c : board.cols) hit |= c & board.overflow_band();
  return hit != 0;
}

}  // namespace bbtetris
