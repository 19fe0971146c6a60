#include "bbtetris/training.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bbtetris/advantage.hpp"

namespace bbtetris::rl {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Seed streams derived from the run seed.
constexpr std::uint64_t kActionStream = 1;
constexpr std::uint64_t kShuffleStream = 2;
constexpr std::uint64_t kProbeStream = 3;

struct EpisodeAdvantages {
  Eigen::VectorXd advantages;
  Eigen::VectorXd targets;
};

EpisodeAdvantages advantages_for(const LinearCritic& critic, std::span<const Transition> steps, double gamma,
                                 double lambda) {
  std::vector<std::uint8_t> done(steps.size());
  for (std::size_t t = 0; t < steps.size(); ++t) done[t] = steps[t].done ? 1 : 0;
  EpisodeAdvantages out;
  out.advantages = gae(td_errors(critic, steps, gamma), gamma, lambda, done);
  out.targets = out.advantages;
  for (std::size_t t = 0; t < steps.size(); ++t)
    out.targets[static_cast<Eigen::Index>(t)] += critic.value(steps[t].pre_features);
  return out;
}

void shuffle_indices(std::vector<int>& idx, ActionSampler& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.raw() % i);
    std::swap(idx[i - 1], idx[j]);
  }
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "reinforce") return Algorithm::Reinforce;
  if (name == "ppo-traj" || name == "trajectory-ppo") return Algorithm::TrajectoryPpo;
  if (name == "ppo-buffer" || name == "buffer-ppo") return Algorithm::BufferPpo;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::Reinforce: return "reinforce";
    case Algorithm::TrajectoryPpo: return "ppo-traj";
    case Algorithm::BufferPpo: return "ppo-buffer";
  }
  return "?";
}

ProbeMode parse_probe_mode(std::string_view name) {
  if (name == "greedy") return ProbeMode::Greedy;
  if (name == "sampling") return ProbeMode::Sampling;
  throw std::invalid_argument("unknown probe mode '" + std::string(name) + "'");
}

std::string_view to_string(ProbeMode mode) noexcept { return mode == ProbeMode::Greedy ? "greedy" : "sampling"; }

Hyperparams Hyperparams::defaults(Algorithm algo) {
  Hyperparams hp;
  switch (algo) {
    case Algorithm::Reinforce:
      hp.gamma = 1.0;
      hp.tau0 = 0.5;
      hp.tau_k = 0.00025;
      hp.lr_actor = 1e-3;
      hp.lr_critic = 0.0;
      hp.episodes = 12'500;
      break;
    case Algorithm::TrajectoryPpo:
      hp.gamma = 0.99;
      hp.lambda = 0.99;
      hp.epochs = 10;
      hp.tau0 = 0.5;
      hp.tau_k = 0.00025;
      hp.clip_eps = 0.1;
      hp.lr_actor = hp.lr_critic = 3e-4;
      hp.episodes = 12'500;
      hp.optimizer = OptimizerKind::Adam;
      hp.actor_reduction = Reduction::Mean;
      break;
    case Algorithm::BufferPpo:
      hp.gamma = 0.99;
      hp.lambda = 0.99;
      hp.epochs = 10;
      hp.clip_eps = 0.2;
      hp.lr_actor = hp.lr_critic = 3e-4;
      hp.batch_size = 2048;
      hp.minibatch_size = 256;
      hp.total_steps = 61'440;
      hp.tau0 = 1.0;
      hp.tau_k = 0.0;
      hp.lr_decay = true;
      break;
  }
  return hp;
}

Transition sample_transition(const LinearPolicy& policy, const GameState& state, const FeatureVector& pre_features,
                             double tau, ActionSampler& sampler) {
  Transition tr;
  tr.pre_features = pre_features;
  tr.batch = afterstate_batch(state);
  tr.tau = tau;
  const auto probs = actor_distribution(policy, tr.batch, tau);
  tr.action = sample_index(probs, sampler.uniform());
  tr.log_prob_old = actor_log_prob(policy, tr.batch, tau, tr.action);
  tr.chosen_features = tr.batch.features.row(tr.action).transpose();
  return tr;
}

eval::GameOutcome play_sampling(const LinearPolicy& policy, double tau, int height, GeneratorKind kind,
                                std::uint64_t seed, long max_steps) {
  PieceGenerator gen(kind, seed);
  ActionSampler sampler(derive_seed(seed, kActionStream));
  GameState state = reset(gen, height);
  eval::GameOutcome out;
  while (out.steps < max_steps) {
    const auto batch = afterstate_batch(state);
    const int action = sample_index(actor_distribution(policy, batch, tau), sampler.uniform());
    const auto step = apply_action(state, action, gen);
    ++out.steps;
    state = step.next;
    if (step.done) break;
  }
  out.score = state.score;
  out.truncated = !is_game_over(state.board);
  return out;
}

namespace {

struct Episode {
  std::vector<Transition> steps;
  long score = 0;
};

Episode rollout(const LinearPolicy& policy, double tau, PieceGenerator& gen, ActionSampler& sampler, int height,
                long max_steps) {
  Episode ep;
  GameState state = reset(gen, height);
  FeatureVector pre = empty_board_features(height);
  while (static_cast<long>(ep.steps.size()) < max_steps) {
    Transition tr = sample_transition(policy, state, pre, tau, sampler);
    const auto step = apply_action(state, tr.action, gen);
    tr.reward = step.reward;
    tr.done = step.done;
    pre = tr.chosen_features;
    state = step.next;
    ep.steps.push_back(std::move(tr));
    if (step.done) break;
  }
  ep.score = state.score;
  return ep;
}

}  // namespace

TrainResult train_reinforce(const Hyperparams& hp, std::uint64_t seed, const ProgressFn& progress) {
  const auto t0 = Clock::now();
  PieceGenerator gen(hp.generator, seed);
  ActionSampler sampler(derive_seed(seed, kActionStream));
  Optimizer opt(hp.optimizer, kNumFeatures);
  TrainResult res;

  for (long i = 0; i < hp.episodes; ++i) {
    const double tau = temperature(i, hp.tau0, hp.tau_k);
    auto ts = Clock::now();
    const Episode ep = rollout(res.policy, tau, gen, sampler, hp.height, hp.max_episode_steps);
    res.sample_seconds += since(ts);

    ts = Clock::now();
    Eigen::VectorXd rewards(ep.steps.size());
    for (std::size_t t = 0; t < ep.steps.size(); ++t) rewards[static_cast<Eigen::Index>(t)] = ep.steps[t].reward;
    const FeatureVector g = reinforce_gradient(res.policy, ep.steps, returns_to_go(rewards, hp.gamma));
    res.policy.theta += opt.step(g, hp.lr_actor);
    res.update_seconds += since(ts);

    res.env_steps += static_cast<long>(ep.steps.size());
    ++res.episodes;
    ++res.updates;
    res.curve.push_back({i, res.env_steps, static_cast<double>(ep.score), since(t0)});
    if (progress) progress(res.curve.back());
  }
  return res;
}

TrainResult train_trajectory_ppo(const Hyperparams& hp, std::uint64_t seed, const ProgressFn& progress) {
  const auto t0 = Clock::now();
  PieceGenerator gen(hp.generator, seed);
  ActionSampler sampler(derive_seed(seed, kActionStream));
  Optimizer actor_opt(hp.optimizer, kNumFeatures);
  Optimizer critic_opt(hp.optimizer, kNumFeatures + 1);
  const PpoStepConfig cfg{hp.clip_eps, hp.lr_actor, hp.lr_critic, hp.normalize_advantages,
                            hp.actor_reduction};
  TrainResult res;

  for (long i = 0; i < hp.episodes; ++i) {
    const double tau = temperature(i, hp.tau0, hp.tau_k);
    auto ts = Clock::now();
    const Episode ep = rollout(res.policy, tau, gen, sampler, hp.height, hp.max_episode_steps);
    res.sample_seconds += since(ts);

    ts = Clock::now();
    const auto adv = advantages_for(res.critic, ep.steps, hp.gamma, hp.lambda);
    std::vector<int> all(ep.steps.size());
    std::iota(all.begin(), all.end(), 0);
    for (int e = 0; e < hp.epochs; ++e) {
      const auto up = ppo_update(res.policy, res.critic, ep.steps, all, adv.advantages, adv.targets, cfg, actor_opt,
                                 critic_opt);
      res.policy = up.policy;
      res.critic = up.critic;
    }
    res.update_seconds += since(ts);

    res.env_steps += static_cast<long>(ep.steps.size());
    ++res.episodes;
    ++res.updates;
    res.curve.push_back({i, res.env_steps, static_cast<double>(ep.score), since(t0)});
    if (progress) progress(res.curve.back());
  }
  return res;
}

TrainResult train_buffer_ppo(const Hyperparams& hp, std::uint64_t seed, int workers, const ProgressFn& progress) {
  if (hp.batch_size <= 0 || hp.minibatch_size <= 0) throw std::invalid_argument("batch sizes must be positive");
  const auto t0 = Clock::now();
  PieceGenerator gen(hp.generator, seed);
  ActionSampler sampler(derive_seed(seed, kActionStream));
  ActionSampler shuffler(derive_seed(seed, kShuffleStream));
  const std::uint64_t probe_seed = derive_seed(seed, kProbeStream);
  Optimizer actor_opt(hp.optimizer, kNumFeatures);
  Optimizer critic_opt(hp.optimizer, kNumFeatures + 1);
  TrainResult res;

  std::vector<Transition> buffer;
  buffer.reserve(static_cast<std::size_t>(hp.batch_size));
  GameState state = reset(gen, hp.height);
  FeatureVector pre = empty_board_features(hp.height);
  long episode_steps = 0;
  long cycle_start = 0;

  while (res.env_steps < hp.total_steps) {
    auto ts = Clock::now();
    Transition tr = sample_transition(res.policy, state, pre, hp.tau0, sampler);
    const auto step = apply_action(state, tr.action, gen);
    tr.reward = step.reward;
    tr.done = step.done;
    ++res.env_steps;
    ++episode_steps;
    if (step.done || episode_steps >= hp.max_episode_steps) {
      ++res.episodes;
      episode_steps = 0;
      state = reset(gen, hp.height);
      pre = empty_board_features(hp.height);
    } else {
      state = step.next;
      pre = tr.chosen_features;
    }
    buffer.push_back(std::move(tr));
    res.sample_seconds += since(ts);

    const bool full = static_cast<int>(buffer.size()) == hp.batch_size;
    if (!full && res.env_steps < hp.total_steps) continue;

    ts = Clock::now();
    const double factor =
        hp.lr_decay ? 1.0 - static_cast<double>(cycle_start) / static_cast<double>(hp.total_steps) : 1.0;
    const PpoStepConfig cfg{hp.clip_eps, hp.lr_actor * factor, hp.lr_critic * factor, hp.normalize_advantages,
                            hp.actor_reduction};
    const auto adv = advantages_for(res.critic, buffer, hp.gamma, hp.lambda);
    std::vector<int> order(buffer.size());
    std::iota(order.begin(), order.end(), 0);
    for (int e = 0; e < hp.epochs; ++e) {
      shuffle_indices(order, shuffler);
      for (std::size_t lo = 0; lo < order.size(); lo += static_cast<std::size_t>(hp.minibatch_size)) {
        const std::size_t n = std::min(order.size() - lo, static_cast<std::size_t>(hp.minibatch_size));
        const std::span<const int> mb(order.data() + lo, n);
        const auto up =
            ppo_update(res.policy, res.critic, buffer, mb, adv.advantages, adv.targets, cfg, actor_opt, critic_opt);
        res.policy = up.policy;
        res.critic = up.critic;
      }
    }
    buffer.clear();
    cycle_start = res.env_steps;
    res.update_seconds += since(ts);

    double mean = 0.0;
    if (hp.eval_episodes > 0) {
      const auto seed_i = derive_seed(probe_seed, static_cast<std::uint64_t>(res.updates));
      const auto outcomes = eval::run_games(hp.eval_episodes, seed_i, workers, [&](std::uint64_t s) {
        if (hp.probe == ProbeMode::Greedy)
          return eval::play_greedy(res.policy.theta, hp.height, hp.generator, s, hp.max_episode_steps);
        return play_sampling(res.policy, hp.tau0, hp.height, hp.generator, s, hp.max_episode_steps);
      });
      for (const auto& o : outcomes) mean += static_cast<double>(o.score);
      mean /= static_cast<double>(outcomes.size());
    }
    res.final_eval_mean = mean;
    res.curve.push_back({res.updates, res.env_steps, mean, since(t0)});
    ++res.updates;
    if (progress) progress(res.curve.back());
  }
  return res;
}

TrainResult train(Algorithm algo, const Hyperparams& hp, std::uint64_t seed, int workers, const ProgressFn& progress) {
  switch (algo) {
    case Algorithm::Reinforce: return train_reinforce(hp, seed, progress);
    case Algorithm::TrajectoryPpo: return train_trajectory_ppo(hp, seed, progress);
    case Algorithm::BufferPpo: return train_buffer_ppo(hp, seed, workers, progress);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace bbtetris::rl
