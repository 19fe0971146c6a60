#include <doctest.h>

#include <set>

#include "bbtetris/grid_oracle.hpp"
#include "bbtetris/pieces.hpp"

using namespace bbtetris;

TEST_CASE("catalog encodings") {
  const std::vector<std::vector<std::vector<std::uint32_t>>> expected = {
      {{3, 3}},
      {{15}, {1, 1, 1, 1}},
      {{6, 3}, {1, 3, 2}},
      {{3, 6}, {2, 3, 1}},
      {{7, 1}, {3, 2, 2}, {4, 7}, {1, 1, 3}},
      {{1, 7}, {3, 1, 1}, {7, 4}, {2, 2, 3}},
      {{1, 3, 1}, {7, 2}, {2, 3, 2}, {2, 7}},
  };
  for (int p = 0; p < kNumPieces; ++p) {
    const auto& def = piece_def(p);
    REQUIRE(def.rotation_count == static_cast<int>(expected[p].size()));
    for (int r = 0; r < def.rotation_count; ++r) {
      const auto& s = def.shape(r);
      const auto cols = s.columns();
      CHECK(std::vector<std::uint32_t>(cols.begin(), cols.end()) == expected[p][r]);
      CHECK(s.cell_count() == 4);
      for (auto c : cols) {
        CHECK(c != 0u);
        CHECK(c < (1u << s.height));
      }
    }
  }
}

TEST_CASE("action sizes") {
  const int sizes[] = {9, 17, 17, 17, 34, 34, 34};
  for (int p = 0; p < kNumPieces; ++p) {
    CHECK(legal_action_count(p) == sizes[p]);
    int sum = 0;
    for (int r = 0; r < piece_def(p).rotation_count; ++r) sum += kBoardWidth - piece_def(p).shape(r).width + 1;
    CHECK(sum == sizes[p]);
  }
}

TEST_CASE("catalog agrees with independent drawings") {
  for (int p = 0; p < kNumPieces; ++p) {
    REQUIRE(oracle::rotation_count(p) == piece_def(p).rotation_count);
    for (int r = 0; r < piece_def(p).rotation_count; ++r) {
      const auto& s = piece_def(p).shape(r);
      CHECK(oracle::shape_width(p, r) == s.width);
      CHECK(oracle::shape_height(p, r) == s.height);
      std::array<std::uint32_t, 4> cols{};
      for (const auto& c : oracle::shape_cells(p, r)) cols[c.x] |= 1u << c.y;
      CHECK(cols == s.cols);
    }
  }
}

TEST_CASE("decode is rotation-major and covers each placement once") {
  for (int p = 0; p < kNumPieces; ++p) {
    std::set<std::pair<int, int>> seen;
    int prev_r = 0, prev_c = -1;
    for (int a = 0; a < legal_action_count(p); ++a) {
      const auto pl = decode_action(p, a);
      CHECK(pl.column + piece_def(p).shape(pl.rotation).width <= kBoardWidth);
      CHECK(seen.insert({pl.rotation, pl.column}).second);
      if (pl.rotation == prev_r) {
        CHECK(pl.column == prev_c + 1);
      } else {
        CHECK(pl.rotation == prev_r + 1);
        CHECK(pl.column == 0);
      }
      prev_r = pl.rotation;
      prev_c = pl.column;
    }
  }
  CHECK(decode_action(6, 0).rotation == 0);
  CHECK(decode_action(6, 7).column == 7);
  CHECK(decode_action(6, 8).rotation == 1);
  CHECK(decode_action(6, 30).rotation == 3);
  CHECK(decode_action(6, 30).column == 5);
}

TEST_CASE("piece names") {
  CHECK(std::string(piece_name(0)) == "O");
  CHECK(std::string(piece_name(6)) == "T");
}
