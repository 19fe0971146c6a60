#include <doctest.h>

#include <random>

#include "bbtetris/bits.hpp"

using namespace bbtetris;

TEST_CASE("column_top_index examples") {
  CHECK(column_top_index(0b101) == 2);
  CHECK(column_top_index(1) == 0);
  CHECK(column_top_index(0x80000000u) == 31);
  CHECK(column_top_index(0) == 0);
}

TEST_CASE("column_top_index matches bit_width") {
  std::mt19937 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const std::uint32_t d = rng() >> (rng() % 32);
    if (d == 0) continue;
    CHECK(column_top_index(d) == std::bit_width(d) - 1);
    CHECK(column_height(d) == std::bit_width(d));
  }
  CHECK(column_height(0) == 0);
}

TEST_CASE("fill_below_highest") {
  CHECK(fill_below_highest(6) == 7u);
  CHECK(fill_below_highest(0) == 0u);
  CHECK(fill_below_highest(0x100) == 0x1ffu);
  std::mt19937 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const std::uint32_t x = rng() >> (rng() % 32);
    if (x == 0) continue;
    CHECK(fill_below_highest(x) == low_mask(column_top_index(x) + 1));
  }
}

TEST_CASE("popcount and low_mask") {
  CHECK(popcount(0) == 0);
  CHECK(popcount(0xffffffffu) == 32);
  CHECK(low_mask(10) == 0x3ffu);
  CHECK(low_mask(32) == 0xffffffffu);
}
