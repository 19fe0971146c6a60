#include "bbtetris/ppo.hpp"

#include <algorithm>
#include <cmath>

#include "bbtetris/advantage.hpp"

namespace bbtetris::rl {

FeatureVector reinforce_gradient(const LinearPolicy& policy, std::span<const Transition> episode,
                                 const Eigen::Ref<const Eigen::VectorXd>& returns) {
  FeatureVector g = FeatureVector::Zero();
  for (std::size_t t = 0; t < episode.size(); ++t) {
    const double weight = returns[static_cast<Eigen::Index>(t)];
    if (weight == 0.0) continue;
    g += weight * actor_grad_log_prob(policy, episode[t].batch, episode[t].tau, episode[t].action);
  }
  return g;
}

LinearPolicy reinforce_update(const LinearPolicy& policy, std::span<const Transition> episode, double gamma,
                              double alpha) {
  Eigen::VectorXd rewards(episode.size());
  for (std::size_t t = 0; t < episode.size(); ++t) rewards[static_cast<Eigen::Index>(t)] = episode[t].reward;
  LinearPolicy next = policy;
  next.theta += alpha * reinforce_gradient(policy, episode, returns_to_go(rewards, gamma));
  return next;
}

Eigen::VectorXd td_errors(const LinearCritic& critic, std::span<const Transition> steps, double gamma) {
  Eigen::VectorXd delta(steps.size());
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const auto& s = steps[t];
    const double bootstrap = s.done ? 0.0 : gamma * critic.value(s.chosen_features);
    delta[static_cast<Eigen::Index>(t)] = s.reward + bootstrap - critic.value(s.pre_features);
  }
  return delta;
}

SurrogateResult clipped_surrogate(const LinearPolicy& policy, std::span<const Transition> steps,
                                  std::span<const int> indices, const Eigen::Ref<const Eigen::VectorXd>& advantages,
                                  double clip_eps) {
  SurrogateResult out;
  if (indices.empty()) return out;
  int clipped = 0;
  for (int i : indices) {
    const auto& s = steps[static_cast<std::size_t>(i)];
    const double adv = advantages[i];
    const double ratio = std::exp(actor_log_prob(policy, s.batch, s.tau, s.action) - s.log_prob_old);
    const double clipped_ratio = std::clamp(ratio, 1.0 - clip_eps, 1.0 + clip_eps);
    out.objective += std::min(ratio * adv, clipped_ratio * adv);
    const bool saturated = (adv > 0.0 && ratio > 1.0 + clip_eps) || (adv < 0.0 && ratio < 1.0 - clip_eps);
    if (saturated) {
      ++clipped;
      continue;
    }
    out.gradient += adv * ratio * actor_grad_log_prob(policy, s.batch, s.tau, s.action);
  }
  const double n = static_cast<double>(indices.size());
  out.objective /= n;
  out.gradient /= n;
  out.clip_fraction = clipped / n;
  return out;
}

CriticResult critic_loss(const LinearCritic& critic, std::span<const Transition> steps, std::span<const int> indices,
                         const Eigen::Ref<const Eigen::VectorXd>& targets) {
  CriticResult out;
  if (indices.empty()) return out;
  for (int i : indices) {
    const auto& f = steps[static_cast<std::size_t>(i)].pre_features;
    const double err = critic.value(f) - targets[i];
    out.loss += 0.5 * err * err;
    out.grad_w += err * f;
    out.grad_bias += err;
  }
  const double n = static_cast<double>(indices.size());
  out.loss /= n;
  out.grad_w /= n;
  out.grad_bias /= n;
  return out;
}

PpoUpdateResult ppo_update(const LinearPolicy& policy, const LinearCritic& critic, std::span<const Transition> steps,
                           std::span<const int> indices, const Eigen::Ref<const Eigen::VectorXd>& advantages,
                           const Eigen::Ref<const Eigen::VectorXd>& value_targets, const PpoStepConfig& cfg,
                           Optimizer& actor_opt, Optimizer& critic_opt) {
  Eigen::VectorXd adv = advantages;
  if (cfg.normalize_advantages && !indices.empty()) {
    double mean = 0.0;
    for (int i : indices) mean += advantages[i];
    mean /= static_cast<double>(indices.size());
    double var = 0.0;
    for (int i : indices) var += (advantages[i] - mean) * (advantages[i] - mean);
    const double sd = std::sqrt(var / static_cast<double>(indices.size()));
    for (int i : indices) adv[i] = (advantages[i] - mean) / (sd + 1e-8);
  }

  PpoUpdateResult out{policy, critic};
  const auto sur = clipped_surrogate(policy, steps, indices, adv, cfg.clip_eps);
  out.surrogate = sur.objective;
  out.clip_fraction = sur.clip_fraction;
  const double scale = cfg.actor_reduction == Reduction::Sum ? static_cast<double>(indices.size()) : 1.0;
  out.policy.theta += actor_opt.step(scale * sur.gradient, cfg.lr_actor);

  const auto crit = critic_loss(critic, steps, indices, value_targets);
  out.critic_loss = crit.loss;
  Eigen::VectorXd g(kNumFeatures + 1);
  g << crit.grad_w, crit.grad_bias;
  const Eigen::VectorXd d = critic_opt.step(g, cfg.lr_critic);
  out.critic.w -= d.head<kNumFeatures>();
  out.critic.bias -= d[kNumFeatures];
  return out;
}

}  // namespace bbtetris::rl
