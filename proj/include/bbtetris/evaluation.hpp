#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bbtetris/features.hpp"
#include "bbtetris/game.hpp"
#include "bbtetris/generator.hpp"

namespace bbtetris::eval {

/// argmax over feasible slots of weights . features, lowest index on ties.
/// Placements that end the game lose to any placement that does not.
int greedy_action(const FeatureVector& weights, const AfterstateBatch& batch);

struct GameOutcome {
  long score = 0;
  long steps = 0;
  bool truncated = false;  // hit the step cap before game over
};

// Called after every step with the pre-step state and the step result.
using StepObserver = std::function<void(const GameState& before, int action, const StepResult& result)>;

GameOutcome play_greedy(const FeatureVector& weights, int height, GeneratorKind kind, std::uint64_t seed,
                        long max_steps, const StepObserver& observer = {});

/// Runs `games` independent episodes; game i uses derive_seed(seed, i).
/// Results are stored by game index so the outcome does not depend on the
/// worker count. workers <= 0 means one per hardware thread.
std::vector<GameOutcome> run_games(int games, std::uint64_t seed, int workers,
                                   const std::function<GameOutcome(std::uint64_t game_seed)>& play);

struct EvalConfig {
  int games = 1000;
  GeneratorKind generator = GeneratorKind::Random;
  int height = 10;
  std::uint64_t seed = 0;
  long max_steps = 1'000'000;
  int workers = 0;
};

struct EvalReport {
  int games = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
  long min = 0;
  long max = 0;
  long total_steps = 0;
  int truncated = 0;
  GeneratorKind generator = GeneratorKind::Random;
  int height = 10;
  double seconds = 0.0;
  std::vector<long> scores;

  std::string to_json(int indent = 2) const;
  std::string table_row() const;
};

EvalReport summarize(const std::vector<GameOutcome>& outcomes, const EvalConfig& cfg, double seconds);

EvalReport evaluate(const FeatureVector& weights, const EvalConfig& cfg);

struct BenchResult {
  long steps = 0;
  long games = 0;
  double seconds = 0.0;
  double steps_per_second = 0.0;
  std::uint64_t trace_hash = 0;  // FNV-1a over (piece, action) pairs
};

/// Steps the engine with uniformly random feasible actions, resetting on
/// game over. With `with_features` the afterstate batch is also built each
/// step.
BenchResult benchmark_throughput(long steps, std::uint64_t seed, bool with_features = false, int height = 10);

}  // namespace bbtetris::eval
