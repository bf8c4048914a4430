#include "treebandit/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <memory>

#include "treebandit/bandit.hpp"
#include "treebandit/equilibrium.hpp"
#include "treebandit/mccfr.hpp"
#include "treebandit/strategy_io.hpp"

namespace tb {

const char* const kCsvHeader = "run_id,iter,elapsed_ns,loss_eval,cum_loss,avg_regret";

Algo parse_algo(const std::string& name) {
  if (name == "bandit-omd") return Algo::BanditOmd;
  if (name == "mccfr") return Algo::Mccfr;
  throw ConfigError("unknown algorithm: " + name);
}

std::string algo_name(Algo a) { return a == Algo::BanditOmd ? "bandit-omd" : "mccfr"; }

RunTrace run_single(const Environment& env, const RunOptions& opt, std::uint64_t seed, int run_id) {
  if (opt.iters < 1) throw std::invalid_argument("run_single: iters must be >= 1");
  RunTrace tr;
  tr.run_id = run_id;
  tr.seed = seed;
  if (opt.record) tr.rows.reserve(opt.iters);
  const Tree& tree = env.tree();
  const double best = env.best_value();
  std::unique_ptr<BanditOmd> bandit;
  std::unique_ptr<Mccfr> mccfr;
  if (opt.algo == Algo::BanditOmd)
    bandit = std::make_unique<BanditOmd>(tree, default_step_size(tree.num_sequences(), opt.iters, opt.eta_mult),
                                         seed);
  else
    mccfr = std::make_unique<Mccfr>(tree, seed);
  std::size_t next_check = 0;
  double cum = 0;
  const auto start = std::chrono::steady_clock::now();
  for (long t = 1; t <= opt.iters; ++t) {
    double l;
    if (bandit) {
      l = env.evaluate(bandit->next_strategy());
      bandit->observe_loss_evaluation(l);
    } else {
      l = mccfr->step(env);
    }
    cum += l;
    const double avg = (cum - t * best) / t;
    if (opt.record) {
      const long long ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
      tr.rows.push_back({run_id, t, ns, l, cum, avg});
    }
    while (next_check < opt.checkpoints.size() && opt.checkpoints[next_check] == t) {
      tr.checkpoint_regret.push_back(avg);
      ++next_check;
    }
  }
  tr.cum_loss = cum;
  tr.regret = cum - opt.iters * best;
  return tr;
}

std::vector<RunTrace> run_batch(const Environment& env, const RunOptions& opt, std::uint64_t base_seed,
                                int runs, Exec exec) {
  std::vector<RunTrace> out(runs);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < runs; ++i) out[i] = run_single(env, opt, derive_seed(base_seed, i), i);
  } else {
    for (int i = 0; i < runs; ++i) out[i] = run_single(env, opt, derive_seed(base_seed, i), i);
  }
  return out;
}

void write_csv(const std::string& path, const RunTrace& trace) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  std::fprintf(f, "%s\n", kCsvHeader);
  for (const auto& r : trace.rows)
    std::fprintf(f, "%d,%ld,%lld,%.17g,%.17g,%.17g\n", r.run_id, r.iter, r.elapsed_ns, r.loss_eval,
                 r.cum_loss, r.avg_regret);
  if (std::fclose(f) != 0) throw std::runtime_error("write failed: " + path);
}

std::vector<RunTrace> run_experiment(const ExperimentConfig& c) {
  if (c.iters < 1) throw ConfigError("iters must be >= 1");
  if (c.runs < 1) throw ConfigError("runs must be >= 1");
  if (!(c.eta_mult > 0)) throw ConfigError("eta multiplier must be positive");
  if (c.player != 0 && c.player != 1) throw ConfigError("player must be 0 or 1");
  if (c.game == "goofspiel" && (c.goof_k < 2 || c.goof_k > 8)) throw ConfigError("goofspiel k must lie in [2, 8]");
  std::shared_ptr<const Game> game;
  try {
    game = std::make_shared<const Game>(make_game(c.game, c.goof_k));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const int opp = 1 - c.player;
  PlayerView opp_view = tfsdm_for_player(*game, opp);
  Vec opponent;
  nlohmann::json opp_info;
  if (c.opponent.empty()) {
    if (c.eq_iters < 1) throw ConfigError("equilibrium iterations must be >= 1");
    if (!(c.eq_eta > 0)) throw ConfigError("equilibrium step size must be positive");
    EquilibriumResult eq = compute_equilibrium(*game, c.eq_iters, c.eq_eta);
    opponent = eq.strategy[opp];
    opp_info = {{"source", "self-play"},
                {"iterations", c.eq_iters},
                {"eta", c.eq_eta},
                {"exploitability", eq.exploitability}};
  } else {
    if (!std::filesystem::exists(c.opponent)) throw ConfigError("opponent file not found: " + c.opponent);
    opponent = read_strategy(c.opponent, opp_view.tree);
    opp_info = {{"source", "file"}, {"path", c.opponent}};
  }
  Environment env(game, c.player, opponent);

  RunOptions opt;
  opt.algo = c.algo;
  opt.iters = c.iters;
  opt.eta_mult = c.eta_mult;
  auto traces = run_batch(env, opt, c.seed, c.runs, c.exec);

  std::filesystem::create_directories(c.out);
  // the opponent is saved next to the runs so the directory alone replays them
  write_strategy((std::filesystem::path(c.out) / "opponent.txt").string(), opp_view.tree, opponent);
  opp_info["saved_as"] = "opponent.txt";
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& tr : traces) {
    const std::string name = "run_" + std::to_string(tr.run_id) + ".csv";
    write_csv((std::filesystem::path(c.out) / name).string(), tr);
    runs.push_back({{"run_id", tr.run_id}, {"seed", tr.seed}, {"file", name}, {"final_avg_regret", tr.regret / c.iters}});
  }
  const Tree& tree = env.tree();
  nlohmann::json manifest = {
      {"game", c.game},
      {"goof_k", c.goof_k},
      {"player", c.player},
      {"algo", algo_name(c.algo)},
      {"iters", c.iters},
      {"runs", c.runs},
      {"seed", c.seed},
      {"eta_mult", c.eta_mult},
      {"eta", c.algo == Algo::BanditOmd ? default_step_size(tree.num_sequences(), c.iters, c.eta_mult) : 0.0},
      {"tree_hash", hash_hex(tree.hash())},
      {"num_sequences", tree.num_sequences()},
      {"raw_min", env.raw_min()},
      {"raw_max", env.raw_max()},
      {"best_value", env.best_value()},
      {"opponent", opp_info},
      {"csv_header", kCsvHeader},
      {"run_files", runs}};
  std::ofstream f(std::filesystem::path(c.out) / "manifest.json");
  if (!f) throw std::runtime_error("cannot write manifest in " + c.out);
  f << manifest.dump(2) << "\n";
  return traces;
}

}  // namespace tb
