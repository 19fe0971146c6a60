#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "bbtetris/evaluation.hpp"
#include "bbtetris/weights.hpp"

using namespace bbtetris;
using namespace bbtetris::eval;

TEST_CASE("zero weights pick action 0") {
  GameState s;
  for (int p = 0; p < kNumPieces; ++p) {
    s.piece = p;
    CHECK(greedy_action(FeatureVector::Zero(), afterstate_batch(s)) == 0);
  }
}

TEST_CASE("greedy matches an exhaustive argmax and is negation invariant") {
  Game game(10, GeneratorKind::Random, 8);
  const auto w = presets::dt10().theta;
  for (int i = 0; i < 300; ++i) {
    const auto batch = afterstate_batch(game.state());
    int brute = -1;
    double best = 0;
    bool any_safe = false;
    for (int a = 0; a < batch.action_count; ++a) any_safe = any_safe || !batch.terminal[a];
    for (int a = 0; a < batch.action_count; ++a) {
      if (any_safe && batch.terminal[a]) continue;
      const double v = batch.features.row(a).dot(w);
      if (brute < 0 || v > best) {
        brute = a;
        best = v;
      }
    }
    const int g = greedy_action(w, batch);
    CHECK(g == brute);
    AfterstateBatch neg = batch;
    neg.features = -batch.features;
    CHECK(greedy_action(FeatureVector(-w), neg) == g);
    if (game.step(g).done) game.reset();
  }
}

TEST_CASE("greedy avoids game-ending placements when a safe one exists") {
  GameState s;
  s.board.cols = {0x3fe, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  s.piece = 1;
  auto batch = afterstate_batch(s);
  REQUIRE(batch.terminal[0] == 1);
  // Make the overflowing slot the most attractive.
  FeatureVector w = FeatureVector::Zero();
  w[0] = 1.0;
  CHECK(batch.features(0, 0) > batch.features(1, 0));
  CHECK(greedy_action(w, batch) != 0);
}

TEST_CASE("parallel evaluation equals serial evaluation") {
  EvalConfig cfg;
  cfg.games = 12;
  cfg.seed = 5;
  cfg.max_steps = 2000;
  cfg.workers = 1;
  const auto serial = evaluate(presets::dt10().theta, cfg);
  cfg.workers = 4;
  const auto parallel = evaluate(presets::dt10().theta, cfg);
  CHECK(serial.scores == parallel.scores);
  CHECK(serial.mean == parallel.mean);
  CHECK(serial.games == 12);
  CHECK(serial.min <= serial.mean);
  CHECK(serial.mean <= serial.max);
}

TEST_CASE("report fields") {
  std::vector<GameOutcome> outcomes = {{2, 10, false}, {4, 20, false}, {9, 30, true}};
  EvalConfig cfg;
  cfg.games = 3;
  const auto r = summarize(outcomes, cfg, 1.5);
  CHECK(r.mean == 5.0);
  CHECK(r.sd == doctest::Approx(std::sqrt(13.0)));
  CHECK(r.min == 2);
  CHECK(r.max == 9);
  CHECK(r.total_steps == 60);
  CHECK(r.truncated == 1);
  const auto j = nlohmann::json::parse(r.to_json(2));
  CHECK(j["games"] == 3);
  CHECK(j["mean"] == 5.0);
  CHECK(j.contains("generator"));
  CHECK_FALSE(r.table_row().empty());
}

TEST_CASE("step observer sees every step") {
  long seen = 0, lines = 0;
  const auto out = play_greedy(presets::dt10().theta, 10, GeneratorKind::Random, 3, 500,
                               [&](const GameState& before, int action, const StepResult& r) {
                                 CHECK(action < legal_action_count(before.piece));
                                 lines += r.reward;
                                 ++seen;
                               });
  CHECK(seen == out.steps);
  CHECK(lines == out.score);
  CHECK(out.steps <= 500);
}

TEST_CASE("adversarial games end") {
  const auto a = play_greedy(presets::dt10().theta, 10, GeneratorKind::AdversarialSZ, 1, 100000);
  const auto b = play_greedy(presets::dt10().theta, 10, GeneratorKind::AdversarialSZ, 2, 100000);
  CHECK_FALSE(a.truncated);
  CHECK(a.score == b.score);
  CHECK(a.steps == b.steps);
}

TEST_CASE("benchmark trace is deterministic") {
  const auto a = benchmark_throughput(5000, 11);
  const auto b = benchmark_throughput(5000, 11);
  const auto c = benchmark_throughput(5000, 12);
  CHECK(a.steps == 5000);
  CHECK(a.trace_hash == b.trace_hash);
  CHECK(a.trace_hash != c.trace_hash);
  CHECK(a.games >= 1);
  CHECK(benchmark_throughput(500, 11, true).steps == 500);
}
