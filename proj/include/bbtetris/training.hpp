#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

#include "bbtetris/evaluation.hpp"
#include "bbtetris/generator.hpp"
#include "bbtetris/optimizer.hpp"
#include "bbtetris/ppo.hpp"

namespace bbtetris::rl {

enum class Algorithm { Reinforce, TrajectoryPpo, BufferPpo };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algo) noexcept;

// How the per-update evaluation probe picks actions.
enum class ProbeMode { Greedy, Sampling };

ProbeMode parse_probe_mode(std::string_view name);
std::string_view to_string(ProbeMode mode) noexcept;

struct Hyperparams {
  double gamma = 0.99;
  double lambda = 0.99;
  double clip_eps = 0.2;
  double lr_actor = 3e-4;
  double lr_critic = 3e-4;
  int epochs = 10;
  int batch_size = 2048;
  int minibatch_size = 256;
  long total_steps = 61'440;
  long episodes = 12'500;
  double tau0 = 1.0;
  double tau_k = 0.0;
  bool lr_decay = false;
  bool normalize_advantages = true;
  OptimizerKind optimizer = OptimizerKind::Sgd;
  Reduction actor_reduction = Reduction::Sum;
  int eval_episodes = 50;        // probe episodes after each buffer update
  ProbeMode probe = ProbeMode::Greedy;
  long max_episode_steps = 1'000'000;
  int height = 10;
  GeneratorKind generator = GeneratorKind::Random;

  static Hyperparams defaults(Algorithm algo);
};

struct CurvePoint {
  long index = 0;   // episode (REINFORCE, trajectory PPO) or update (buffer PPO)
  long steps = 0;   // cumulative environment steps
  double value = 0.0;
  double seconds = 0.0;
};

struct TrainResult {
  LinearPolicy policy;
  LinearCritic critic;
  std::vector<CurvePoint> curve;
  long env_steps = 0;
  long episodes = 0;  // completed training episodes
  long updates = 0;   // buffer updates (buffer PPO) or episode updates
  double final_eval_mean = 0.0;
  double sample_seconds = 0.0;
  double update_seconds = 0.0;
};

using ProgressFn = std::function<void(const CurvePoint&)>;

/// Uniform doubles in [0, 1) from the top 53 bits of an mt19937_64 draw.
class ActionSampler {
 public:
  explicit ActionSampler(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

/// Samples an action at temperature tau and records the transition.
Transition sample_transition(const LinearPolicy& policy, const GameState& state, const FeatureVector& pre_features,
                             double tau, ActionSampler& sampler);

/// One episode with actions sampled from the policy at temperature tau.
eval::GameOutcome play_sampling(const LinearPolicy& policy, double tau, int height, GeneratorKind kind,
                                std::uint64_t seed, long max_steps);

TrainResult train_reinforce(const Hyperparams& hp, std::uint64_t seed, const ProgressFn& progress = {});
TrainResult train_trajectory_ppo(const Hyperparams& hp, std::uint64_t seed, const ProgressFn& progress = {});
TrainResult train_buffer_ppo(const Hyperparams& hp, std::uint64_t seed, int workers = 1,
                             const ProgressFn& progress = {});

TrainResult train(Algorithm algo, const Hyperparams& hp, std::uint64_t seed, int workers = 1,
                  const ProgressFn& progress = {});

}  // namespace bbtetris::rl
