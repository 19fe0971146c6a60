#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace bbtetris::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime failure or failed verification
inline constexpr int kExitUsage = 2;    // bad flags, weight file or board height

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, used for config hashes.
std::uint64_t fnv1a(std::string_view text) noexcept;

}  // namespace bbtetris::cli
