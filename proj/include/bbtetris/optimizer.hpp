#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bbtetris::rl {

enum class OptimizerKind { Sgd, Adam };

inline OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "sgd") return OptimizerKind::Sgd;
  if (name == "adam") return OptimizerKind::Adam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

inline std::string_view to_string(OptimizerKind kind) { return kind == OptimizerKind::Sgd ? "sgd" : "adam"; }

/// Turns a gradient into a parameter step. Callers add the step for ascent
/// and subtract it for descent.
class Optimizer {
 public:
  Optimizer(OptimizerKind kind, Eigen::Index dim) : kind_(kind), m_(Eigen::VectorXd::Zero(dim)), v_(m_) {}

  Eigen::VectorXd step(const Eigen::VectorXd& grad, double lr) {
    if (kind_ == OptimizerKind::Sgd) return lr * grad;
    ++t_;
    m_ = kBeta1 * m_ + (1.0 - kBeta1) * grad;
    v_ = kBeta2 * v_ + (1.0 - kBeta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    return lr * (m_ / c1).cwiseQuotient(((v_ / c2).cwiseSqrt().array() + kEps).matrix());
  }

  OptimizerKind kind() const noexcept { return kind_; }
  long steps() const noexcept { return t_; }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;

  OptimizerKind kind_;
  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
  long t_ = 0;
};

}  // namespace bbtetris::rl
