#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace bbtetris {

enum class GeneratorKind { Random, SevenBag, AdversarialSZ };

std::string_view to_string(GeneratorKind kind) noexcept;

/// Accepts "random", "7bag"/"bag", "adversarial"/"sz". Throws
/// std::invalid_argument otherwise.
GeneratorKind parse_generator_kind(std::string_view name);

// splitmix64 finalizer; used to derive independent per-game seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix_seed(mix_seed(base) ^ (index * 0xd1b54a32d192ed03ull));
}

/// Seeded piece stream. Random draws i.i.d. uniform pieces, SevenBag deals
/// shuffled permutations of all seven, AdversarialSZ alternates S, Z, S, ...
class PieceGenerator {
 public:
  explicit PieceGenerator(GeneratorKind kind = GeneratorKind::Random, std::uint64_t seed = 0);

  int next();

  GeneratorKind kind() const noexcept { return kind_; }

  // Uniform integer in [0, n); the piece RNG is shared with callers that
  // need reproducible side draws (e.g. random benchmark actions).
  int uniform(int n);
  double uniform_real();

 private:
  GeneratorKind kind_;
  std::mt19937_64 rng_;
  std::array<int, 7> bag_{};
  int bag_pos_ = 7;
  bool next_is_z_ = false;
};

}  // namespace bbtetris
