#include "bbtetris/board.hpp"

#include <algorithm>
#include <stdexcept>

namespace bbtetris {

bool valid_board_height(int height) noexcept { return height == 10 || height == 20; }

Board Board::empty(int height) {
  if (!valid_board_height(height)) {
    throw std::invalid_argument("board height must be 10 or 20, got " + std::to_string(height));
  }
  Board b;
  b.height = height;
  return b;
}

int Board::cell_count() const noexcept {
  int n = 0;
  for (auto c : cols) n += popcount(c);
  return n;
}

std::string to_string(const Board& board) {
  std::string out;
  int top = board.height - 1;
  for (auto c : board.cols) {
    if (c != 0) top = std::max(top, column_top_index(c));
  }
  for (int row = top; row >= 0; --row) {
    out += row >= board.height ? '+' : '|';
    for (auto c : board.cols) out += ((c >> row) & 1u) ? '#' : '.';
    out += row >= board.height ? '+' : '|';
    out += '\n';
  }
  out += '+' + std::string(kBoardWidth, '-') + "+\n";
  return out;
}

}  // namespace bbtetris
