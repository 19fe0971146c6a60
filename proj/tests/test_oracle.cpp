#include <doctest.h>

#include <random>

#include "bbtetris/grid_oracle.hpp"

using namespace bbtetris;

TEST_CASE("grid round trip") {
  CHECK(oracle::from_grid(oracle::to_grid(Board::empty(10))) == Board::empty(10));
  std::mt19937 rng(2);
  for (int h : {10, 20}) {
    for (int i = 0; i < 500; ++i) {
      Board b = Board::empty(h);
      for (auto& c : b.cols) c = static_cast<std::uint32_t>(rng()) & low_mask(h + kHeadroom);
      const auto g = oracle::to_grid(b);
      CHECK(g.filled_count() == b.cell_count());
      CHECK(oracle::from_grid(g) == b);
    }
  }
}

TEST_CASE("oracle fixture") {
  Board pre = Board::empty(10);
  pre.cols = {127, 127, 14, 31, 31, 3, 1, 63, 63, 63};
  const auto step = oracle::oracle_step(oracle::to_grid(pre), 6, 3, 5);
  CHECK(step.reward == 2);
  CHECK(step.drop_height == 1);
  CHECK(step.delete_rows == 6u);
  CHECK_FALSE(step.done);
  FeatureVector expected;
  expected << 2.0, 6, 22, 12, 1, 3, 1, 1, 4;
  CHECK(oracle::oracle_features(step.after, step, 6, 3) == expected);
}

TEST_CASE("parity on random transitions") {
  for (int h : {10, 20}) {
    const auto r = oracle::verify_parity(5000, 3, h);
    CHECK(r.transitions == 5000);
    CHECK_MESSAGE(r.mismatches == 0, r.first_mismatch);
    CHECK(r.line_clears > 0);
  }
}

TEST_CASE("parity on pathological boards") {
  for (int h : {10, 20}) {
    const auto r = oracle::verify_pathological(h);
    CHECK(r.transitions > 1000);
    CHECK_MESSAGE(r.mismatches == 0, r.first_mismatch);
    CHECK(r.terminal > 0);
  }
}
