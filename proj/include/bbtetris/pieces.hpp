#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace bbtetris {

inline constexpr int kBoardWidth = 10;
inline constexpr int kNumPieces = 7;
inline constexpr int kMaxActions = 34;

enum class PieceKind : int { O = 0, I = 1, S = 2, Z = 3, L = 4, J = 5, T = 6 };

/// One rotation of a tetromino. Column words use bit 0 for the shape's
/// bottom row.
struct PieceShape {
  std::array<std::uint32_t, 4> cols{};
  int width = 0;
  int height = 0;

  constexpr std::span<const std::uint32_t> columns() const noexcept {
    return {cols.data(), static_cast<std::size_t>(width)};
  }
  constexpr int cell_count() const noexcept {
    int n = 0;
    for (int i = 0; i < width; ++i) n += std::popcount(cols[i]);
    return n;
  }
};

/// All rotations of a tetromino plus its action count on a 10-wide board.
struct PieceDef {
  std::array<PieceShape, 4> shapes{};
  int rotation_count = 0;
  int action_size = 0;
  int max_height = 0;

  constexpr const PieceShape& shape(int rotation) const { return shapes[rotation]; }
};

/// A decoded action: which rotation and the leftmost column it occupies.
struct Placement {
  int rotation = 0;
  int column = 0;
};

namespace detail {

constexpr PieceShape make_shape(std::initializer_list<std::uint32_t> cols, int height) {
  PieceShape s;
  int i = 0;
  for (auto c : cols) s.cols[i++] = c;
  s.width = i;
  s.height = height;
  return s;
}

constexpr PieceDef make_piece(std::initializer_list<PieceShape> shapes) {
  PieceDef p;
  int r = 0;
  for (const auto& s : shapes) {
    p.shapes[r++] = s;
    p.action_size += kBoardWidth - s.width + 1;
    p.max_height = p.max_height < s.height ? s.height : p.max_height;
  }
  p.rotation_count = r;
  return p;
}

}  // namespace detail

// Order O, I, S, Z, L, J, T; rotation order is the action enumeration order.
inline constexpr std::array<PieceDef, kNumPieces> kPieceCatalog = {
    detail::make_piece({detail::make_shape({3, 3}, 2)}),
    detail::make_piece({detail::make_shape({15}, 4), detail::make_shape({1, 1, 1, 1}, 1)}),
    detail::make_piece({detail::make_shape({6, 3}, 3), detail::make_shape({1, 3, 2}, 2)}),
    detail::make_piece({detail::make_shape({3, 6}, 3), detail::make_shape({2, 3, 1}, 2)}),
    detail::make_piece({detail::make_shape({7, 1}, 3), detail::make_shape({3, 2, 2}, 2),
                        detail::make_shape({4, 7}, 3), detail::make_shape({1, 1, 3}, 2)}),
    detail::make_piece({detail::make_shape({1, 7}, 3), detail::make_shape({3, 1, 1}, 2),
                        detail::make_shape({7, 4}, 3), detail::make_shape({2, 2, 3}, 2)}),
    detail::make_piece({detail::make_shape({1, 3, 1}, 2), detail::make_shape({7, 2}, 3),
                        detail::make_shape({2, 3, 2}, 2), detail::make_shape({2, 7}, 3)}),
};

constexpr const PieceDef& piece_def(int piece) { return kPieceCatalog[piece]; }

constexpr int legal_action_count(int piece) { return kPieceCatalog[piece].action_size; }

namespace detail {

using PlacementTable = std::array<std::array<Placement, kMaxActions>, kNumPieces>;

constexpr PlacementTable build_placements() {
  PlacementTable table{};
  for (int p = 0; p < kNumPieces; ++p) {
    int a = 0;
    const auto& def = kPieceCatalog[p];
    for (int r = 0; r < def.rotation_count; ++r) {
      for (int c = 0; c + def.shapes[r].width <= kBoardWidth; ++c) {
        table[p][a++] = Placement{r, c};
      }
    }
  }
  return table;
}

inline constexpr PlacementTable kPlacements = build_placements();

}  // namespace detail

// Rotation-major, then column left to right. No range check.
constexpr Placement decode_action(int piece, int action) {
  return detail::kPlacements[piece][action];
}

constexpr const char* piece_name(int piece) {
  constexpr const char* names[] = {"O", "I", "S", "Z", "L", "J", "T"};
  return names[piece];
}

}  // namespace bbtetris
