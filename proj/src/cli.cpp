#include "bbtetris/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "bbtetris/evaluation.hpp"
#include "bbtetris/grid_oracle.hpp"
#include "bbtetris/training.hpp"
#include "bbtetris/version.hpp"
#include "bbtetris/weights.hpp"

namespace bbtetris::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ull;
  return h;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Reproducibility header: seed, hash of the resolved config, version.
json run_header(const std::string& command, std::uint64_t seed, const json& config) {
  json h;
  h["command"] = command;
  h["seed"] = seed;
  h["config_hash"] = hex64(fnv1a(config.dump()));
  h["version"] = kVersion;
  h["config"] = config;
  return h;
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("BBTETRIS_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

LinearWeights weights_or_usage(const std::string& name) {
  try {
    return resolve_weights(name);
  } catch (const WeightFileError& e) {
    throw UsageError(e.what());
  }
}

GeneratorKind generator_or_usage(const std::string& name) {
  try {
    return parse_generator_kind(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json weights_json(const LinearWeights& w, const json& header) {
  json j = json::parse(weights_to_json(w));
  j["meta"] = header;
  return j;
}

// ---- train ----

struct TrainOpts {
  std::string algo = "ppo-buffer";
  std::uint64_t seed = 1;
  int board = 10;
  std::string gen = "random";
  std::string out_dir;
  int workers = 1;
  bool quiet = false;

  std::optional<double> gamma, lambda, clip, lr, lr_critic, tau0, tau_k;
  std::optional<int> epochs, batch_size, minibatch_size, eval_episodes;
  std::optional<long> episodes, total_steps, max_episode_steps;
  std::optional<std::string> optimizer, actor_reduction, probe;
  bool no_adv_norm = false;
  bool no_lr_decay = false;
};

rl::Hyperparams resolve_hyperparams(const TrainOpts& o, rl::Algorithm algo) {
  auto hp = rl::Hyperparams::defaults(algo);
  if (o.gamma) hp.gamma = *o.gamma;
  if (o.lambda) hp.lambda = *o.lambda;
  if (o.clip) hp.clip_eps = *o.clip;
  if (o.lr) hp.lr_actor = *o.lr;
  if (o.lr_critic) hp.lr_critic = *o.lr_critic;
  else if (o.lr && algo != rl::Algorithm::Reinforce) hp.lr_critic = *o.lr;
  if (o.tau0) hp.tau0 = *o.tau0;
  if (o.tau_k) hp.tau_k = *o.tau_k;
  if (o.epochs) hp.epochs = *o.epochs;
  if (o.batch_size) hp.batch_size = *o.batch_size;
  if (o.minibatch_size) hp.minibatch_size = *o.minibatch_size;
  if (o.eval_episodes) hp.eval_episodes = *o.eval_episodes;
  if (o.episodes) hp.episodes = *o.episodes;
  if (o.total_steps) hp.total_steps = *o.total_steps;
  if (o.max_episode_steps) hp.max_episode_steps = *o.max_episode_steps;
  try {
    if (o.optimizer) hp.optimizer = rl::parse_optimizer(*o.optimizer);
    if (o.probe) hp.probe = rl::parse_probe_mode(*o.probe);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.actor_reduction) {
    if (*o.actor_reduction == "sum") hp.actor_reduction = rl::Reduction::Sum;
    else if (*o.actor_reduction == "mean") hp.actor_reduction = rl::Reduction::Mean;
    else throw UsageError("actor reduction must be 'sum' or 'mean'");
  }
  if (o.no_adv_norm) hp.normalize_advantages = false;
  if (o.no_lr_decay) hp.lr_decay = false;
  hp.height = o.board;
  hp.generator = generator_or_usage(o.gen);
  if (hp.tau0 <= 0.0) throw UsageError("temperature must be positive");
  return hp;
}

json hyperparams_json(const rl::Hyperparams& hp, rl::Algorithm algo) {
  json j;
  j["algo"] = std::string(rl::to_string(algo));
  j["gamma"] = hp.gamma;
  j["lambda"] = hp.lambda;
  j["clip_eps"] = hp.clip_eps;
  j["lr_actor"] = hp.lr_actor;
  j["lr_critic"] = hp.lr_critic;
  j["epochs"] = hp.epochs;
  j["batch_size"] = hp.batch_size;
  j["minibatch_size"] = hp.minibatch_size;
  j["total_steps"] = hp.total_steps;
  j["episodes"] = hp.episodes;
  j["tau0"] = hp.tau0;
  j["tau_k"] = hp.tau_k;
  j["lr_decay"] = hp.lr_decay;
  j["normalize_advantages"] = hp.normalize_advantages;
  j["optimizer"] = std::string(rl::to_string(hp.optimizer));
  j["actor_reduction"] = hp.actor_reduction == rl::Reduction::Sum ? "sum" : "mean";
  j["probe"] = std::string(rl::to_string(hp.probe));
  j["eval_episodes"] = hp.eval_episodes;
  j["max_episode_steps"] = hp.max_episode_steps;
  j["board_height"] = hp.height;
  j["generator"] = std::string(to_string(hp.generator));
  return j;
}

int do_train(const TrainOpts& o, std::ostream& out, std::ostream& err) {
  rl::Algorithm algo;
  try {
    algo = rl::parse_algorithm(o.algo);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto hp = resolve_hyperparams(o, algo);
  const json header = run_header("train", o.seed, hyperparams_json(hp, algo));
  const fs::path dir = output_dir(o.out_dir);

  const auto res = rl::train(algo, hp, o.seed, o.workers, [&](const rl::CurvePoint& p) {
    if (!o.quiet && (algo == rl::Algorithm::BufferPpo || p.index % 100 == 0))
      err << rl::to_string(algo) << " " << p.index << " steps=" << p.steps << " value=" << p.value << '\n';
  });

  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  csv << "# seed=" << o.seed << " config_hash=" << header["config_hash"].get<std::string>() << " version=" << kVersion
      << '\n';
  csv << (algo == rl::Algorithm::BufferPpo ? "update" : "episode") << ",steps,return,seconds\n";
  csv << std::setprecision(10);
  for (const auto& p : res.curve) csv << p.index << ',' << p.steps << ',' << p.value << ',' << p.seconds << '\n';
  write_file(dir / "curve.csv", csv.str());

  write_file(dir / "weights.json", weights_json({res.policy.theta, 0.0}, header).dump(2) + "\n");
  write_file(dir / "critic.json", weights_json({res.critic.w, res.critic.bias}, header).dump(2) + "\n");

  json report;
  report["run"] = header;
  report["env_steps"] = res.env_steps;
  report["episodes"] = res.episodes;
  report["updates"] = res.updates;
  report["final_eval_mean"] = res.final_eval_mean;
  report["sample_seconds"] = res.sample_seconds;
  report["update_seconds"] = res.update_seconds;
  report["artifacts"] = {{"curve", (dir / "curve.csv").string()},
                         {"weights", (dir / "weights.json").string()},
                         {"critic", (dir / "critic.json").string()}};
  write_file(dir / "train_report.json", report.dump(2) + "\n");
  out << report.dump(2) << '\n';
  return kExitOk;
}

// ---- eval ----

struct EvalOpts {
  std::string weights = "dt10";
  int board = 10;
  int games = 1000;
  std::string gen = "random";
  std::uint64_t seed = 0;
  int workers = 0;
  long max_steps = 1'000'000;
  std::string out;
  bool table = false;
};

int do_eval(const EvalOpts& o, std::ostream& out) {
  const auto w = weights_or_usage(o.weights);
  eval::EvalConfig cfg;
  cfg.games = o.games;
  cfg.height = o.board;
  cfg.generator = generator_or_usage(o.gen);
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  cfg.max_steps = o.max_steps;

  json config;
  config["weights"] = o.weights;
  config["theta"] = std::vector<double>(w.theta.data(), w.theta.data() + kNumFeatures);
  config["board_height"] = o.board;
  config["games"] = o.games;
  config["generator"] = std::string(to_string(cfg.generator));
  config["max_steps"] = o.max_steps;

  const auto report = eval::evaluate(w.theta, cfg);
  json j;
  j["run"] = run_header("eval", o.seed, config);
  j["report"] = json::parse(report.to_json());
  if (!o.out.empty()) write_file(output_dir("") / o.out, j.dump(2) + "\n");
  if (o.table) out << report.table_row() << '\n';
  else out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- bench ----

struct BenchOpts {
  long steps = 10'000;
  std::uint64_t seed = 1;
  int board = 10;
  bool with_features = false;
};

int do_bench(const BenchOpts& o, std::ostream& out) {
  const auto r = eval::benchmark_throughput(o.steps, o.seed, o.with_features, o.board);
  json config;
  config["steps"] = o.steps;
  config["board_height"] = o.board;
  config["with_features"] = o.with_features;
  json j;
  j["run"] = run_header("bench", o.seed, config);
  j["steps"] = r.steps;
  j["games"] = r.games;
  j["seconds"] = r.seconds;
  j["steps_per_second"] = r.steps_per_second;
  j["trace_hash"] = hex64(r.trace_hash);
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- verify ----

struct VerifyOpts {
  long transitions = 100'000;
  std::uint64_t seed = 1;
  std::vector<int> boards{10, 20};
  bool pathological = true;
};

int do_verify(const VerifyOpts& o, std::ostream& out) {
  json config;
  config["transitions"] = o.transitions;
  config["boards"] = o.boards;
  config["pathological"] = o.pathological;
  json j;
  j["run"] = run_header("verify", o.seed, config);
  long mismatches = 0;
  for (int h : o.boards) {
    const auto r = oracle::verify_parity(o.transitions, o.seed, h);
    json b;
    b["board_height"] = h;
    b["transitions"] = r.transitions;
    b["line_clears"] = r.line_clears;
    b["terminal"] = r.terminal;
    b["mismatches"] = r.mismatches;
    if (!r.first_mismatch.empty()) b["first_mismatch"] = r.first_mismatch;
    mismatches += r.mismatches;
    if (o.pathological) {
      const auto p = oracle::verify_pathological(h);
      b["pathological_transitions"] = p.transitions;
      b["pathological_mismatches"] = p.mismatches;
      if (!p.first_mismatch.empty()) b["pathological_first_mismatch"] = p.first_mismatch;
      mismatches += p.mismatches;
    }
    j["boards"].push_back(b);
  }
  j["mismatches"] = mismatches;
  j["ok"] = mismatches == 0;
  out << j.dump(2) << '\n';
  return mismatches == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bitboard Tetris engine: training, evaluation, benchmark and oracle verification", "bbtetris"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  auto height_check = CLI::IsMember({10, 20});

  TrainOpts t;
  auto* train = app.add_subcommand("train", "Train a linear actor-critic");
  train->add_option("--algo", t.algo, "reinforce | ppo-traj | ppo-buffer")->capture_default_str();
  train->add_option("--seed", t.seed)->capture_default_str();
  train->add_option("--board", t.board, "Board height (10 or 20)")->check(height_check)->capture_default_str();
  train->add_option("--gen", t.gen, "random | 7bag | adversarial")->capture_default_str();
  train->add_option("--out-dir", t.out_dir, "Artifact directory (default: $BBTETRIS_OUTPUT_DIR or .)");
  train->add_option("--workers", t.workers, "Threads for the evaluation probe")->capture_default_str();
  train->add_flag("--quiet", t.quiet);
  train->add_option("--gamma", t.gamma);
  train->add_option("--lambda", t.lambda);
  train->add_option("--clip", t.clip);
  train->add_option("--lr", t.lr, "Actor learning rate (critic too unless --lr-critic)");
  train->add_option("--lr-critic", t.lr_critic);
  train->add_option("--tau0", t.tau0);
  train->add_option("--tau-k", t.tau_k);
  train->add_option("--epochs", t.epochs)->check(CLI::PositiveNumber);
  train->add_option("--batch-size", t.batch_size)->check(CLI::PositiveNumber);
  train->add_option("--minibatch-size", t.minibatch_size)->check(CLI::PositiveNumber);
  train->add_option("--eval-episodes", t.eval_episodes)->check(CLI::NonNegativeNumber);
  train->add_option("--episodes", t.episodes)->check(CLI::PositiveNumber);
  train->add_option("--total-steps", t.total_steps)->check(CLI::PositiveNumber);
  train->add_option("--max-episode-steps", t.max_episode_steps)->check(CLI::PositiveNumber);
  train->add_option("--optimizer", t.optimizer, "sgd | adam");
  train->add_option("--actor-reduction", t.actor_reduction, "sum | mean");
  train->add_option("--probe", t.probe, "greedy | sampling");
  train->add_flag("--no-adv-norm", t.no_adv_norm);
  train->add_flag("--no-lr-decay", t.no_lr_decay);

  EvalOpts e;
  auto* evalc = app.add_subcommand("eval", "Greedy evaluation of fixed weights");
  evalc->add_option("--weights", e.weights, "dt10 | dt20 | ppo-best | path")->capture_default_str();
  evalc->add_option("--board", e.board)->check(height_check)->capture_default_str();
  evalc->add_option("--games", e.games)->check(CLI::PositiveNumber)->capture_default_str();
  evalc->add_option("--gen", e.gen)->capture_default_str();
  evalc->add_option("--seed", e.seed)->capture_default_str();
  evalc->add_option("--workers", e.workers, "0 = one per hardware thread")->capture_default_str();
  evalc->add_option("--max-steps", e.max_steps, "Per-game step cap")->check(CLI::PositiveNumber)->capture_default_str();
  evalc->add_option("--out", e.out, "Also write the JSON report here (relative to the output dir)");
  evalc->add_flag("--table", e.table, "Print a one-line summary instead of JSON");

  BenchOpts b;
  auto* bench = app.add_subcommand("bench", "Random-action throughput benchmark");
  bench->add_option("--steps", b.steps)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", b.seed)->capture_default_str();
  bench->add_option("--board", b.board)->check(height_check)->capture_default_str();
  bench->add_flag("--with-features", b.with_features, "Also build the afterstate batch each step");

  VerifyOpts v;
  bool no_path = false;
  auto* verify = app.add_subcommand("verify", "Differential check against the grid oracle");
  verify->add_option("--transitions", v.transitions)->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--seed", v.seed)->capture_default_str();
  verify->add_option("--board", v.boards, "Board heights to check")->check(height_check);
  verify->add_flag("--no-pathological", no_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) return do_train(t, out, err);
    if (*evalc) return do_eval(e, out);
    if (*bench) return do_bench(b, out);
    if (*verify) {
      v.pathological = !no_path;
      return do_verify(v, out);
    }
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace bbtetris::cli
