#include "bbtetris/advantage.hpp"

#include <cassert>

namespace bbtetris::rl {

Eigen::VectorXd returns_to_go(const Eigen::Ref<const Eigen::VectorXd>& rewards, double gamma) {
  Eigen::VectorXd g(rewards.size());
  double next = 0.0;
  for (Eigen::Index t = rewards.size() - 1; t >= 0; --t) {
    next = rewards[t] + gamma * next;
    g[t] = next;
  }
  return g;
}

Eigen::VectorXd gae(const Eigen::Ref<const Eigen::VectorXd>& deltas, double gamma, double lambda,
                    std::span<const std::uint8_t> done) {
  assert(static_cast<Eigen::Index>(done.size()) == deltas.size());
  Eigen::VectorXd a(deltas.size());
  double next = 0.0;
  for (Eigen::Index t = deltas.size() - 1; t >= 0; --t) {
    next = deltas[t] + gamma * lambda * next * (done[t] ? 0.0 : 1.0);
    a[t] = next;
  }
  return a;
}

}  // namespace bbtetris::rl
