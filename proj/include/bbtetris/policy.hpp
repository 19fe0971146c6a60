#pragma once

// Afterstate-evaluating linear actor and linear critic.
//
// The actor scores every feasible placement by theta . f(s, a) / tau and
// takes a softmax over the 34 action slots; masked slots get probability
// exactly zero. All math is templated on the scalar so gradient checks can
// run in extended precision.

#include <Eigen/Core>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>

#include "bbtetris/features.hpp"

namespace bbtetris::rl {

template <typename Scalar>
using ActionVec = Eigen::Matrix<Scalar, kMaxActions, 1>;

using Mask = std::array<std::uint8_t, kMaxActions>;

struct LinearPolicy {
  FeatureVector theta = FeatureVector::Zero();
};

struct LinearCritic {
  FeatureVector w = FeatureVector::Zero();
  double bias = 0.0;

  double value(const FeatureVector& f) const { return w.dot(f) + bias; }
};

inline bool any_feasible(const Mask& mask) {
  for (auto m : mask) {
    if (m) return true;
  }
  return false;
}

/// theta . f_i / tau on feasible slots, -inf elsewhere.
template <typename Scalar>
ActionVec<Scalar> masked_logits(const FeatureVec<Scalar>& theta, const BatchMatrix<Scalar>& features,
                                const Mask& mask, Scalar tau) {
  ActionVec<Scalar> logits = (features * theta) / tau;
  for (int i = 0; i < kMaxActions; ++i) {
    if (!mask[i]) logits[i] = -std::numeric_limits<Scalar>::infinity();
  }
  return logits;
}

/// Softmax of masked logits. Requires at least one feasible slot.
template <typename Scalar>
ActionVec<Scalar> masked_softmax(const ActionVec<Scalar>& logits, const Mask& mask) {
  assert(any_feasible(mask));
  Scalar top = -std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < kMaxActions; ++i) {
    if (mask[i] && logits[i] > top) top = logits[i];
  }
  ActionVec<Scalar> p = ActionVec<Scalar>::Zero();
  Scalar total = 0;
  for (int i = 0; i < kMaxActions; ++i) {
    if (mask[i]) {
      p[i] = std::exp(logits[i] - top);
      total += p[i];
    }
  }
  return p / total;
}

template <typename Scalar>
ActionVec<Scalar> action_probabilities(const FeatureVec<Scalar>& theta, const BatchMatrix<Scalar>& features,
                                       const Mask& mask, Scalar tau) {
  return masked_softmax<Scalar>(masked_logits<Scalar>(theta, features, mask, tau), mask);
}

template <typename Scalar>
Scalar log_prob(const FeatureVec<Scalar>& theta, const BatchMatrix<Scalar>& features, const Mask& mask, Scalar tau,
                int action) {
  const ActionVec<Scalar> logits = masked_logits<Scalar>(theta, features, mask, tau);
  Scalar top = -std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < kMaxActions; ++i) {
    if (mask[i] && logits[i] > top) top = logits[i];
  }
  Scalar total = 0;
  for (int i = 0; i < kMaxActions; ++i) {
    if (mask[i]) total += std::exp(logits[i] - top);
  }
  return logits[action] - top - std::log(total);
}

/// d/dtheta log pi(action) = (f_action - E_pi[f]) / tau.
template <typename Scalar>
FeatureVec<Scalar> grad_log_prob(const FeatureVec<Scalar>& theta, const BatchMatrix<Scalar>& features,
                                 const Mask& mask, Scalar tau, int action) {
  const ActionVec<Scalar> p = action_probabilities<Scalar>(theta, features, mask, tau);
  const FeatureVec<Scalar> expected = features.transpose() * p;
  return (features.row(action).transpose() - expected) / tau;
}

// Convenience overloads on the double-precision batch type.

inline ActionVec<double> actor_distribution(const LinearPolicy& policy, const AfterstateBatch& batch, double tau) {
  return action_probabilities<double>(policy.theta, batch.features, batch.mask, tau);
}

inline double actor_log_prob(const LinearPolicy& policy, const AfterstateBatch& batch, double tau, int action) {
  return log_prob<double>(policy.theta, batch.features, batch.mask, tau, action);
}

inline FeatureVector actor_grad_log_prob(const LinearPolicy& policy, const AfterstateBatch& batch, double tau,
                                         int action) {
  return grad_log_prob<double>(policy.theta, batch.features, batch.mask, tau, action);
}

/// Softmax temperature for episode i: tau0 / (1 + tau_k * i).
constexpr double temperature(long episode, double tau0, double tau_k) noexcept {
  return tau0 / (1.0 + tau_k * static_cast<double>(episode));
}

/// Inverse-CDF draw from a probability vector given u in [0, 1). Never
/// returns a zero-probability slot.
template <typename Scalar>
int sample_index(const ActionVec<Scalar>& probs, double u) {
  Scalar acc = 0;
  int last = -1;
  for (int i = 0; i < kMaxActions; ++i) {
    if (probs[i] <= 0) continue;
    last = i;
    acc += probs[i];
    if (u < acc) return i;
  }
  return last;
}

}  // namespace bbtetris::rl
