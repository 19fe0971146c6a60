#include <doctest.h>

#include <cmath>
#include <random>

#include "bbtetris/evaluation.hpp"
#include "bbtetris/policy.hpp"
#include "bbtetris/weights.hpp"

using namespace bbtetris;
using namespace bbtetris::rl;

namespace {

struct Instance {
  FeatureVector theta;
  BatchMatrix<double> features;
  Mask mask{};
  double tau;
  int action;
};

Instance random_instance(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Instance in;
  for (int j = 0; j < kNumFeatures; ++j) in.theta[j] = n(rng);
  for (int i = 0; i < kMaxActions; ++i)
    for (int j = 0; j < kNumFeatures; ++j) in.features(i, j) = 3.0 * n(rng);
  const int count = 1 + static_cast<int>(rng() % kMaxActions);
  for (int i = 0; i < count; ++i) in.mask[i] = 1;
  in.tau = 0.25 + std::uniform_real_distribution<double>(0.0, 2.0)(rng);
  in.action = static_cast<int>(rng() % count);
  return in;
}

}  // namespace

TEST_CASE("softmax support and normalization") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 500; ++k) {
    auto in = random_instance(rng);
    in.theta *= 20.0;  // large logits
    const auto p = action_probabilities<double>(in.theta, in.features, in.mask, in.tau);
    double sum = 0;
    for (int i = 0; i < kMaxActions; ++i) {
      if (!in.mask[i]) CHECK(p[i] == 0.0);
      CHECK(std::isfinite(p[i]));
      sum += p[i];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("zero weights give a uniform distribution over feasible slots") {
  GameState s;
  s.piece = 0;
  const auto batch = afterstate_batch(s);
  const auto p = actor_distribution(LinearPolicy{}, batch, 1.0);
  for (int i = 0; i < 9; ++i) CHECK(p[i] == doctest::Approx(1.0 / 9));
  for (int i = 9; i < kMaxActions; ++i) CHECK(p[i] == 0.0);
}

TEST_CASE("shift invariance") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const auto in = random_instance(rng);
    auto logits = masked_logits<double>(in.theta, in.features, in.mask, in.tau);
    const auto p = masked_softmax<double>(logits, in.mask);
    for (int i = 0; i < kMaxActions; ++i) {
      if (in.mask[i]) logits[i] += 123.5;
    }
    const auto q = masked_softmax<double>(logits, in.mask);
    CHECK((p - q).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("argmax is preserved by positive scaling and lower temperature") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto in = random_instance(rng);
    Eigen::Index base, scaled, cold;
    const auto p = action_probabilities<double>(in.theta, in.features, in.mask, in.tau);
    p.maxCoeff(&base);
    action_probabilities<double>(FeatureVector(in.theta * 7.3), in.features, in.mask, in.tau).maxCoeff(&scaled);
    action_probabilities<double>(in.theta, in.features, in.mask, in.tau / 10).maxCoeff(&cold);
    CHECK(base == scaled);
    CHECK(base == cold);
  }
}

TEST_CASE("actor argmax agrees with greedy on the fixture batch") {
  GameState s;
  s.board.cols = {127, 127, 14, 31, 31, 3, 1, 63, 63, 63};
  s.piece = 6;
  const auto batch = afterstate_batch(s);
  const auto w = presets::dt10().theta;
  Eigen::Index best;
  actor_distribution(LinearPolicy{w}, batch, 1.0).maxCoeff(&best);
  int brute = 0;
  for (int a = 1; a < 34; ++a) {
    if (batch.features.row(a).dot(w) > batch.features.row(brute).dot(w)) brute = a;
  }
  CHECK(best == brute);
  CHECK(eval::greedy_action(w, batch) == brute);
}

TEST_CASE("temperature schedule") {
  CHECK(temperature(0, 0.5, 0.00025) == 0.5);
  CHECK(temperature(4000, 0.5, 0.00025) == doctest::Approx(0.25).epsilon(1e-15));
  double prev = temperature(0, 0.5, 0.00025);
  for (long i = 1; i < 20000; i += 97) {
    const double t = temperature(i, 0.5, 0.00025);
    CHECK(t <= prev);
    prev = t;
  }
}

TEST_CASE("log-probability gradient matches finite differences") {
  std::mt19937_64 rng(4);
  const double h = 1e-6;
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    auto in = random_instance(rng);
    in.theta *= 0.3;
    const auto g = grad_log_prob<double>(in.theta, in.features, in.mask, in.tau, in.action);
    for (int j = 0; j < kNumFeatures; ++j) {
      FeatureVector up = in.theta, dn = in.theta;
      up[j] += h;
      dn[j] -= h;
      const double fd = (log_prob<double>(up, in.features, in.mask, in.tau, in.action) -
                         log_prob<double>(dn, in.features, in.mask, in.tau, in.action)) /
                        (2 * h);
      CHECK(std::abs(fd - g[j]) <= 1e-4 * std::max(1.0, std::abs(g[j])));
    }
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("extended precision agrees with double") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto in = random_instance(rng);
    const FeatureVec<long double> th = in.theta.cast<long double>();
    const BatchMatrix<long double> f = in.features.cast<long double>();
    const auto gl = grad_log_prob<long double>(th, f, in.mask, static_cast<long double>(in.tau), in.action);
    const auto gd = grad_log_prob<double>(in.theta, in.features, in.mask, in.tau, in.action);
    CHECK((gl.cast<double>() - gd).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("sampling follows the distribution and skips masked slots") {
  ActionVec<double> p = ActionVec<double>::Zero();
  p[2] = 0.25;
  p[5] = 0.75;
  CHECK(sample_index<double>(p, 0.0) == 2);
  CHECK(sample_index<double>(p, 0.2499) == 2);
  CHECK(sample_index<double>(p, 0.25) == 5);
  CHECK(sample_index<double>(p, 0.999999999) == 5);
  CHECK(sample_index<double>(p, 1.0) == 5);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int hits = 0;
  for (int i = 0; i < 40000; ++i) hits += sample_index<double>(p, u(rng)) == 5;
  CHECK(hits / 40000.0 == doctest::Approx(0.75).epsilon(0.02));
}
