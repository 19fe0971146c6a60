#include "bbtetris/c_api.h"

#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>

#include "bbtetris/evaluation.hpp"
#include "bbtetris/game.hpp"
#include "bbtetris/version.hpp"

using namespace bbtetris;

struct bbt_env {
  int height;
  PieceGenerator gen;
};

namespace {

thread_local std::string last_error;

int fail(int code, const std::string& msg) {
  last_error = msg;
  return code;
}

bool to_kind(int g, GeneratorKind& out) {
  switch (g) {
    case BBT_GEN_RANDOM: out = GeneratorKind::Random; return true;
    case BBT_GEN_SEVEN_BAG: out = GeneratorKind::SevenBag; return true;
    case BBT_GEN_ADVERSARIAL_SZ: out = GeneratorKind::AdversarialSZ; return true;
    default: return false;
  }
}

WireState load(const int32_t* s) {
  WireState w;
  std::memcpy(w.data(), s, sizeof(w));
  return w;
}

void store(const WireState& w, int32_t* out) { std::memcpy(out, w.data(), sizeof(w)); }

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const std::out_of_range& e) {
    return fail(BBT_ERANGE, e.what());
  } catch (const std::logic_error& e) {
    // invalid_argument derives from logic_error; tell them apart.
    if (dynamic_cast<const std::invalid_argument*>(&e)) return fail(BBT_EINVAL, e.what());
    return fail(BBT_ETERMINAL, e.what());
  } catch (const std::exception& e) {
    return fail(BBT_EINTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

bbt_env* bbt_create(int height, int generator, uint64_t seed) {
  GeneratorKind kind;
  if (!valid_board_height(height)) {
    fail(BBT_EINVAL, "board height must be 10 or 20");
    return nullptr;
  }
  if (!to_kind(generator, kind)) {
    fail(BBT_EINVAL, "unknown generator code");
    return nullptr;
  }
  return new bbt_env{height, PieceGenerator(kind, seed)};
}

void bbt_destroy(bbt_env* env) { delete env; }

int bbt_reset(bbt_env* env, int32_t state_out[BBT_STATE_SLOTS]) {
  if (!env || !state_out) return fail(BBT_EINVAL, "null argument");
  return guarded([&] {
    store(reset(env->gen, env->height).to_wire(), state_out);
    return BBT_OK;
  });
}

int bbt_step(bbt_env* env, const int32_t state_in[BBT_STATE_SLOTS], int action, int32_t state_out[BBT_STATE_SLOTS],
             int* done_out) {
  if (!env || !state_in || !state_out) return fail(BBT_EINVAL, "null argument");
  return guarded([&] {
    const auto state = GameState::from_wire(load(state_in), env->height);
    const auto step = apply_action(state, action, env->gen);
    store(step.next.to_wire(), state_out);
    if (done_out) *done_out = step.done ? 1 : 0;
    return BBT_OK;
  });
}

int bbt_is_final(const int32_t state[BBT_STATE_SLOTS], int height) {
  if (!state) return fail(BBT_EINVAL, "null argument");
  if (!valid_board_height(height)) return fail(BBT_EINVAL, "board height must be 10 or 20");
  return guarded([&] { return is_game_over(GameState::from_wire(load(state), height)) ? 1 : 0; });
}

int bbt_get_9feature(const int32_t state[BBT_STATE_SLOTS], int height, double features_out[BBT_BATCH_VALUES],
                     uint8_t mask_out[BBT_MAX_ACTIONS]) {
  if (!state || !features_out || !mask_out) return fail(BBT_EINVAL, "null argument");
  if (!valid_board_height(height)) return fail(BBT_EINVAL, "board height must be 10 or 20");
  return guarded([&] {
    const auto bytes = afterstate_batch(GameState::from_wire(load(state), height)).to_bytes();
    std::memcpy(features_out, bytes.data(), BBT_BATCH_VALUES * sizeof(double));
    std::memcpy(mask_out, bytes.data() + BBT_BATCH_VALUES * sizeof(double), BBT_MAX_ACTIONS);
    return BBT_OK;
  });
}

int bbt_parallel_episode(const double weights[9], int games, int height, int generator, uint64_t seed, int workers,
                         double* mean_out) {
  GeneratorKind kind;
  if (!weights || !mean_out) return fail(BBT_EINVAL, "null argument");
  if (games < 1) return fail(BBT_EINVAL, "games must be >= 1");
  if (!valid_board_height(height)) return fail(BBT_EINVAL, "board height must be 10 or 20");
  if (!to_kind(generator, kind)) return fail(BBT_EINVAL, "unknown generator code");
  return guarded([&] {
    eval::EvalConfig cfg;
    cfg.games = games;
    cfg.height = height;
    cfg.generator = kind;
    cfg.seed = seed;
    cfg.workers = workers;
    FeatureVector w;
    for (int i = 0; i < kNumFeatures; ++i) w[i] = weights[i];
    *mean_out = eval::evaluate(w, cfg).mean;
    return BBT_OK;
  });
}

const char* bbt_last_error(void) { return last_error.c_str(); }

const char* bbt_version(void) { return kVersion; }

}  // extern "C"
