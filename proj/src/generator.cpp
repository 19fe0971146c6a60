#include "bbtetris/generator.hpp"

#include <stdexcept>

#include "bbtetris/pieces.hpp"

namespace bbtetris {

std::string_view to_string(GeneratorKind kind) noexcept {
  switch (kind) {
    case GeneratorKind::Random: return "random";
    case GeneratorKind::SevenBag: return "7bag";
    case GeneratorKind::AdversarialSZ: return "adversarial";
  }
  return "unknown";
}

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "random") return GeneratorKind::Random;
  if (name == "7bag" || name == "bag" || name == "seven-bag") return GeneratorKind::SevenBag;
  if (name == "adversarial" || name == "sz") return GeneratorKind::AdversarialSZ;
  throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

PieceGenerator::PieceGenerator(GeneratorKind kind, std::uint64_t seed) : kind_(kind), rng_(seed) {}

// Plain modulo keeps the stream identical across standard libraries; the
// bias for n <= 34 against a 64-bit word is below 2^-58.
int PieceGenerator::uniform(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

double PieceGenerator::uniform_real() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

int PieceGenerator::next() {
  switch (kind_) {
    case GeneratorKind::Random:
      return uniform(kNumPieces);
    case GeneratorKind::SevenBag:
      if (bag_pos_ == kNumPieces) {
        for (int i = 0; i < kNumPieces; ++i) bag_[i] = i;
        for (int i = kNumPieces - 1; i > 0; --i) std::swap(bag_[i], bag_[uniform(i + 1)]);
        bag_pos_ = 0;
      }
      return bag_[bag_pos_++];
    case GeneratorKind::AdversarialSZ: {
      const int piece = next_is_z_ ? static_cast<int>(PieceKind::Z) : static_cast<int>(PieceKind::S);
      next_is_z_ = !next_is_z_;
      return piece;
    }
  }
  return 0;
}

}  // namespace bbtetris
