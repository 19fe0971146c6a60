#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>

namespace bbtetris::rl {

/// G_t = r_t + gamma * G_{t+1}, with G past the end = 0.
Eigen::VectorXd returns_to_go(const Eigen::Ref<const Eigen::VectorXd>& rewards, double gamma);

/// GAE by backward recursion A_t = delta_t + gamma * lambda * A_{t+1} * (1 - done_t).
/// The last element has no continuation: a truncated segment bootstraps only
/// through its own delta.
Eigen::VectorXd gae(const Eigen::Ref<const Eigen::VectorXd>& deltas, double gamma, double lambda,
                    std::span<const std::uint8_t> done);

}  // namespace bbtetris::rl
