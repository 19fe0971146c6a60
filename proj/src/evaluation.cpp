#include "bbtetris/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace bbtetris::eval {

int greedy_action(const FeatureVector& weights, const AfterstateBatch& batch) {
  int best = -1;
  double best_value = 0.0;
  bool best_terminal = true;
  for (int a = 0; a < kMaxActions; ++a) {
    if (!batch.mask[a]) continue;
    const bool terminal = batch.terminal[a] != 0;
    const double v = batch.features.row(a).dot(weights.transpose());
    const bool better = best < 0 || (terminal != best_terminal ? !terminal : v > best_value);
    if (better) {
      best = a;
      best_value = v;
      best_terminal = terminal;
    }
  }
  return best;
}

GameOutcome play_greedy(const FeatureVector& weights, int height, GeneratorKind kind, std::uint64_t seed,
                        long max_steps, const StepObserver& observer) {
  PieceGenerator gen(kind, seed);
  GameState state = reset(gen, height);
  GameOutcome out;
  while (out.steps < max_steps) {
    const int action = greedy_action(weights, afterstate_batch(state));
    const auto step = apply_action(state, action, gen);
    if (observer) observer(state, action, step);
    ++out.steps;
    state = step.next;
    if (step.done) break;
  }
  out.score = state.score;
  out.truncated = !is_game_over(state.board);
  return out;
}

std::vector<GameOutcome> run_games(int games, std::uint64_t seed, int workers,
                                   const std::function<GameOutcome(std::uint64_t)>& play) {
  std::vector<GameOutcome> outcomes(static_cast<std::size_t>(std::max(games, 0)));
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, std::max(games, 1));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < games; i = next++) outcomes[i] = play(derive_seed(seed, static_cast<std::uint64_t>(i)));
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return outcomes;
}

EvalReport summarize(const std::vector<GameOutcome>& outcomes, const EvalConfig& cfg, double seconds) {
  EvalReport r;
  r.games = static_cast<int>(outcomes.size());
  r.generator = cfg.generator;
  r.height = cfg.height;
  r.seconds = seconds;
  if (outcomes.empty()) return r;
  r.min = outcomes.front().score;
  r.max = outcomes.front().score;
  double sum = 0.0;
  for (const auto& o : outcomes) {
    r.scores.push_back(o.score);
    sum += static_cast<double>(o.score);
    r.min = std::min(r.min, o.score);
    r.max = std::max(r.max, o.score);
    r.total_steps += o.steps;
    r.truncated += o.truncated ? 1 : 0;
  }
  r.mean = sum / r.games;
  double ss = 0.0;
  for (const auto& o : outcomes) ss += (o.score - r.mean) * (o.score - r.mean);
  r.sd = r.games > 1 ? std::sqrt(ss / (r.games - 1)) : 0.0;
  return r;
}

EvalReport evaluate(const FeatureVector& weights, const EvalConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto outcomes = run_games(cfg.games, cfg.seed, cfg.workers, [&](std::uint64_t s) {
    return play_greedy(weights, cfg.height, cfg.generator, s, cfg.max_steps);
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summarize(outcomes, cfg, secs);
}

std::string EvalReport::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["games"] = games;
  j["mean"] = mean;
  j["sd"] = sd;
  j["min"] = min;
  j["max"] = max;
  j["generator"] = std::string(to_string(generator));
  j["board_height"] = height;
  j["total_steps"] = total_steps;
  j["truncated_games"] = truncated;
  j["seconds"] = seconds;
  return j.dump(indent);
}

std::string EvalReport::table_row() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "10x" << height << " | " << to_string(generator) << " | games " << games << " | mean " << mean << " (" << sd
     << ") | min " << min << " | max " << max << " | truncated " << truncated << " | " << seconds << " s";
  return os.str();
}

BenchResult benchmark_throughput(long steps, std::uint64_t seed, bool with_features, int height) {
  PieceGenerator gen(GeneratorKind::Random, seed);
  BenchResult r;
  std::uint64_t hash = 0xcbf29ce484222325ull;
  auto mix = [&hash](std::uint64_t v) { hash = (hash ^ v) * 0x100000001b3ull; };
  double sink = 0.0;

  const auto start = std::chrono::steady_clock::now();
  GameState state = reset(gen, height);
  r.games = 1;
  for (long i = 0; i < steps; ++i) {
    if (with_features) sink += afterstate_batch(state).features(0, 0);
    const int action = gen.uniform(legal_action_count(state.piece));
    mix(static_cast<std::uint64_t>(state.piece));
    mix(static_cast<std::uint64_t>(action));
    const auto step = apply_action(state, action, gen);
    if (step.done) {
      state = reset(gen, height);
      ++r.games;
    } else {
      state = step.next;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.steps = steps;
  r.steps_per_second = r.seconds > 0 ? static_cast<double>(steps) / r.seconds : 0.0;
  r.trace_hash = hash ^ static_cast<std::uint64_t>(sink != sink);
  return r;
}

}  // namespace bbtetris::eval
