#pragma once

#include <bit>
#include <cstdint>

namespace bbtetris {

// Index of the highest set bit by binary halving; 0 for d == 0.
// An empty column and a column of height 1 both map to 0, so callers that
// care about emptiness must check d first.
constexpr int column_top_index(std::uint32_t d) noexcept {
  int h = 0;
  if (d & 0xffff0000u) {
    d >>= 16;
    h += 16;
  }
  if (d & 0xff00u) {
    d >>= 8;
    h += 8;
  }
  if (d & 0xf0u) {
    d >>= 4;
    h += 4;
  }
  if (d & 0x0cu) {
    d >>= 2;
    h += 2;
  }
  if (d & 0x02u) {
    h += 1;
  }
  return h;
}

// Column height in cells (0 for an empty column).
constexpr int column_height(std::uint32_t d) noexcept {
  return d == 0 ? 0 : column_top_index(d) + 1;
}

// Sets every bit from the highest set bit down to bit 0.
constexpr std::uint32_t fill_below_highest(std::uint32_t x) noexcept {
  x |= x >> 1;
  x |= x >> 2;
  x |= x >> 4;
  x |= x >> 8;
  x |= x >> 16;
  return x;
}

constexpr int popcount(std::uint32_t x) noexcept { return std::popcount(x); }

constexpr std::uint32_t low_mask(int bits) noexcept {
  return bits >= 32 ? 0xffffffffu : ((std::uint32_t{1} << bits) - 1u);
}

}  // namespace bbtetris
