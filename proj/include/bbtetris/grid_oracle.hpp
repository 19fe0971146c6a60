#pragma once

// Naive boolean-grid reference implementation of the engine and the nine
// features. Loops only, no bit tricks; used for differential testing.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bbtetris/board.hpp"
#include "bbtetris/features.hpp"

namespace bbtetris::oracle {

struct Cell {
  int x = 0;
  int y = 0;
};

struct GridBoard {
  int height = 10;
  // rows[0] is the bottom row; there may be rows above the playfield.
  std::vector<std::array<bool, kBoardWidth>> rows;

  bool at(int x, int y) const { return y >= 0 && y < static_cast<int>(rows.size()) && rows[y][x]; }
  int filled_count() const;
  friend bool operator==(const GridBoard&, const GridBoard&) = default;
};

GridBoard to_grid(const Board& board);
Board from_grid(const GridBoard& grid);

/// Cells of a piece rotation relative to its bottom-left corner, parsed from
/// a drawing that does not share code with the bit catalog.
std::vector<Cell> shape_cells(int piece, int rotation);
int shape_height(int piece, int rotation);
int shape_width(int piece, int rotation);
int rotation_count(int piece);

struct OracleStep {
  GridBoard after;
  int reward = 0;
  int drop_height = 0;
  std::uint32_t delete_rows = 0;
  std::vector<Cell> placed;  // absolute, pre-clear
  bool done = false;
};

/// Drops the piece cell by cell from above the stack, then removes full
/// playfield rows by explicit compaction.
OracleStep oracle_step(const GridBoard& grid, int piece, int rotation, int column);

FeatureVector oracle_features(const GridBoard& after, const OracleStep& step, int piece, int rotation);

// Individual loop-based features, exposed for unit tests.
int oracle_row_transitions(const GridBoard& g);
int oracle_column_transitions(const GridBoard& g);
int oracle_holes(const GridBoard& g);
int oracle_board_well(const GridBoard& g);
int oracle_hole_depth(const GridBoard& g);
int oracle_rows_with_holes(const GridBoard& g);
int oracle_pattern_diversity(const GridBoard& g);

struct ParityReport {
  long transitions = 0;
  long mismatches = 0;
  long line_clears = 0;
  long terminal = 0;
  std::string first_mismatch;
};

/// Differential run: random reachable transitions (mixed random and
/// DT-10-greedy playouts) through both the bitboard engine and the oracle.
ParityReport verify_parity(long transitions, std::uint64_t seed, int height);

/// Every action on a fixed set of pathological boards (full, checkerboard,
/// wells of each depth, multi-hole columns).
ParityReport verify_pathological(int height);

}  // namespace bbtetris::oracle
