#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "bbtetris/features.hpp"
#include "bbtetris/optimizer.hpp"
#include "bbtetris/policy.hpp"

namespace bbtetris::rl {

/// One environment step as stored for learning.
struct Transition {
  FeatureVector pre_features;      // value input before the decision
  AfterstateBatch batch;           // all candidate afterstates
  int action = 0;
  double log_prob_old = 0.0;
  double tau = 1.0;                // temperature the action was sampled at
  double reward = 0.0;
  bool done = false;
  FeatureVector chosen_features;   // afterstate actually reached
};

// ---- REINFORCE ----

/// sum_t G_t * grad log pi(a_t | s_t).
FeatureVector reinforce_gradient(const LinearPolicy& policy, std::span<const Transition> episode,
                                 const Eigen::Ref<const Eigen::VectorXd>& returns);

/// One plain gradient-ascent step with returns computed at discount gamma.
LinearPolicy reinforce_update(const LinearPolicy& policy, std::span<const Transition> episode, double gamma,
                              double alpha);

// ---- PPO ----

/// TD errors r + gamma * V(chosen) * (1 - done) - V(pre), in episode order.
Eigen::VectorXd td_errors(const LinearCritic& critic, std::span<const Transition> steps, double gamma);

struct SurrogateResult {
  double objective = 0.0;       // mean of min(ratio * A, clip(ratio) * A)
  FeatureVector gradient = FeatureVector::Zero();
  double clip_fraction = 0.0;   // share of samples with zero gradient from clipping
};

/// Clipped surrogate and its analytic gradient over `indices` of `steps`,
/// using the advantages exactly as given (no normalization here).
SurrogateResult clipped_surrogate(const LinearPolicy& policy, std::span<const Transition> steps,
                                  std::span<const int> indices, const Eigen::Ref<const Eigen::VectorXd>& advantages,
                                  double clip_eps);

struct CriticResult {
  double loss = 0.0;  // 0.5 * mean (V(pre) - target)^2
  FeatureVector grad_w = FeatureVector::Zero();
  double grad_bias = 0.0;
};

CriticResult critic_loss(const LinearCritic& critic, std::span<const Transition> steps, std::span<const int> indices,
                         const Eigen::Ref<const Eigen::VectorXd>& targets);

// Whether the actor step uses the minibatch mean or sum of per-sample
// surrogate gradients. The critic always uses the mean.
enum class Reduction { Mean, Sum };

struct PpoStepConfig {
  double clip_eps = 0.2;
  double lr_actor = 3e-4;
  double lr_critic = 3e-4;
  bool normalize_advantages = true;
  Reduction actor_reduction = Reduction::Mean;
};

struct PpoUpdateResult {
  LinearPolicy policy;
  LinearCritic critic;
  double surrogate = 0.0;
  double critic_loss = 0.0;
  double clip_fraction = 0.0;
};

/// One ascent step on the clipped surrogate and one descent step on the
/// critic's squared error for the given minibatch. Advantages are
/// standardized over the minibatch first when configured.
PpoUpdateResult ppo_update(const LinearPolicy& policy, const LinearCritic& critic, std::span<const Transition> steps,
                           std::span<const int> indices, const Eigen::Ref<const Eigen::VectorXd>& advantages,
                           const Eigen::Ref<const Eigen::VectorXd>& value_targets, const PpoStepConfig& cfg,
                           Optimizer& actor_opt, Optimizer& critic_opt);

}  // namespace bbtetris::rl
