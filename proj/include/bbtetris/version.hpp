#pragma once

#ifndef BBTETRIS_VERSION
#define BBTETRIS_VERSION "0.0.0"
#endif

namespace bbtetris {

inline constexpr const char* kVersion = BBTETRIS_VERSION;

}  // namespace bbtetris
