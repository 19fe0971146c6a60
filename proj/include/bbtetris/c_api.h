#ifndef BBTETRIS_C_API_H
#define BBTETRIS_C_API_H

/* Plain C surface over the engine for foreign-function bindings.
 * States cross the boundary as 15 int32 slots; feature batches as 306
 * doubles plus 34 mask bytes. Functions return 0 on success and a negative
 * BBT_E* code on failure; bbt_last_error() describes the last failure on
 * the calling thread. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define BBT_STATE_SLOTS 15
#define BBT_BATCH_VALUES 306
#define BBT_MAX_ACTIONS 34

enum {
  BBT_OK = 0,
  BBT_EINVAL = -1,    /* malformed state, height or argument */
  BBT_ERANGE = -2,    /* action index outside the current piece's range */
  BBT_ETERMINAL = -3, /* step on a finished game */
  BBT_EINTERNAL = -4
};

enum { BBT_GEN_RANDOM = 0, BBT_GEN_SEVEN_BAG = 1, BBT_GEN_ADVERSARIAL_SZ = 2 };

typedef struct bbt_env bbt_env;

bbt_env* bbt_create(int height, int generator, uint64_t seed);
void bbt_destroy(bbt_env* env);

int bbt_reset(bbt_env* env, int32_t state_out[BBT_STATE_SLOTS]);

/* Applies `action` to `state_in` (validated) and draws the next piece from
 * the env's generator. `done_out` may be NULL. */
int bbt_step(bbt_env* env, const int32_t state_in[BBT_STATE_SLOTS], int action,
             int32_t state_out[BBT_STATE_SLOTS], int* done_out);

/* 1 if finished, 0 if not, negative on a malformed state. */
int bbt_is_final(const int32_t state[BBT_STATE_SLOTS], int height);

int bbt_get_9feature(const int32_t state[BBT_STATE_SLOTS], int height, double features_out[BBT_BATCH_VALUES],
                     uint8_t mask_out[BBT_MAX_ACTIONS]);

/* Greedy play of `games` episodes; writes the mean score. */
int bbt_parallel_episode(const double weights[9], int games, int height, int generator, uint64_t seed, int workers,
                         double* mean_out);

const char* bbt_last_error(void);
const char* bbt_version(void);

#ifdef __cplusplus
}
#endif

#endif
