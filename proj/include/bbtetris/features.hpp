#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "bbtetris/board.hpp"
#include "bbtetris/game.hpp"
#include "bbtetris/pieces.hpp"

namespace bbtetris {

inline constexpr int kNumFeatures = 9;
inline constexpr int kBatchValues = kMaxActions * kNumFeatures;  // 306

template <typename Scalar>
using FeatureVec = Eigen::Matrix<Scalar, kNumFeatures, 1>;
using FeatureVector = FeatureVec<double>;

template <typename Scalar>
using BatchMatrix = Eigen::Matrix<Scalar, kMaxActions, kNumFeatures, Eigen::RowMajor>;

enum class Feature : int {
  LandingHeight = 0,
  ErodedPieceCells,
  RowTransitions,
  ColumnTransitions,
  Holes,
  BoardWell,
  HoleDepth,
  RowsWithHoles,
  PatternDiversity,
};

inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "landing_height", "eroded_piece_cells", "row_transitions", "column_transitions", "holes",
    "board_well",     "hole_depth",         "rows_with_holes", "pattern_diversity",
};

// Per-feature kernels. Board arguments are post-clear afterstates.

constexpr double landing_height(int drop_height, int shape_height) noexcept {
  return drop_height + (shape_height - 1) / 2.0;
}

int eroded_piece_cells(int reward, std::uint32_t delete_line, int drop_height, const PieceShape& shape) noexcept;
int eroded_piece_cells(const GameState& state, const PieceShape& shape) noexcept;
int row_transitions(const Board& board) noexcept;
int column_transitions(const Board& board) noexcept;
int holes(const Board& board) noexcept;
int board_well(const Board& board) noexcept;
int hole_depth(const Board& board) noexcept;
int rows_with_holes(const Board& board) noexcept;
int pattern_diversity(const Board& board) noexcept;

/// The seven board-only features plus the two transition features.
FeatureVector board_features(const Board& after, double landing, double eroded) noexcept;

/// Feature vector of an empty board with no transition (landing and eroded
/// both zero). Used as the value input before the first placement.
FeatureVector empty_board_features(int height);

struct TransitionFeatures {
  FeatureVector features;
  Board after;
  int reward = 0;
  int drop_height = 0;
  std::uint32_t delete_line = 0;
  bool done = false;
};

/// Drop + clear on a copy of `pre`; landing height and eroded cells come from
/// the pre-clear placement, the rest from the cleared board.
TransitionFeatures features_of_transition(const Board& pre, const PieceShape& shape, int column) noexcept;

/// Features for all 34 action slots of a state. Slots past the piece's
/// action count are masked out and zero-filled.
struct AfterstateBatch {
  BatchMatrix<double> features = BatchMatrix<double>::Zero();
  std::array<std::uint8_t, kMaxActions> mask{};
  // 1 where the placement ends the game. Not part of the wire payload.
  std::array<std::uint8_t, kMaxActions> terminal{};
  int action_count = 0;

  static constexpr std::size_t kWireBytes = kBatchValues * sizeof(double) + kMaxActions;

  /// 306 native-endian doubles in action order, then 34 mask bytes.
  std::vector<std::uint8_t> to_bytes() const;
  static AfterstateBatch from_bytes(const std::vector<std::uint8_t>& bytes);
};

AfterstateBatch afterstate_batch(const GameState& state);

}  // namespace bbtetris
