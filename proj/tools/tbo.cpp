// Experiment harness.
//   tbo run --game kuhn --algo bandit-omd --iters 10000 --runs 3 --seed 1 --out out/kuhn
//   tbo equilibrium --game kuhn --iters 1000000 --player 1 --out kuhn_p1.txt
// Exit codes: 0 ok, 1 configuration error, 2 runtime error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "treebandit/equilibrium.hpp"
#include "treebandit/experiment.hpp"
#include "treebandit/strategy_io.hpp"

namespace {

int equilibrium_cmd(const std::string& game_name, int goof_k, long iters, double eta, int player,
                    const std::string& out) {
  if (iters < 1) throw tb::ConfigError("iters must be >= 1");
  if (!(eta > 0)) throw tb::ConfigError("eta must be positive");
  if (player != 0 && player != 1) throw tb::ConfigError("player must be 0 or 1");
  tb::Game game;
  try {
    game = tb::make_game(game_name, goof_k);
  } catch (const std::invalid_argument& e) {
    throw tb::ConfigError(e.what());
  }
  tb::EquilibriumResult r = tb::compute_equilibrium(game, iters, eta);
  tb::PlayerView view = tb::tfsdm_for_player(game, player);
  tb::write_strategy(out, view.tree, r.strategy[player]);
  nlohmann::json manifest = {{"game", game_name},
                             {"goof_k", goof_k},
                             {"player", player},
                             {"iterations", iters},
                             {"eta", r.eta},
                             {"exploitability", r.exploitability},
                             {"tree_hash", tb::hash_hex(view.tree.hash())},
                             {"num_sequences", view.tree.num_sequences()}};
  std::ofstream f(out + ".json");
  if (!f) throw std::runtime_error("cannot write " + out + ".json");
  f << manifest.dump(2) << "\n";
  std::printf("exploitability %.6g after %ld iterations; wrote %s\n", r.exploitability, iters, out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bandit linear optimization on sequential decision problems"};
  app.require_subcommand(1);

  tb::ExperimentConfig cfg;
  std::string algo = "bandit-omd";
  bool serial = false;
  auto* run = app.add_subcommand("run", "run an algorithm against a fixed opponent and log regret");
  run->add_option("--game", cfg.game, "matrix | kuhn | leduc | goofspiel")->capture_default_str();
  run->add_option("--goof-k", cfg.goof_k, "goofspiel cards per player")->capture_default_str();
  run->add_option("--algo", algo, "bandit-omd | mccfr")->capture_default_str();
  run->add_option("--iters", cfg.iters, "iterations per run")->capture_default_str();
  run->add_option("--runs", cfg.runs, "seeded repetitions")->capture_default_str();
  run->add_option("--seed", cfg.seed, "base seed")->capture_default_str();
  run->add_option("--eta-mult", cfg.eta_mult, "step size multiplier")->capture_default_str();
  run->add_option("--opponent", cfg.opponent, "opponent strategy file (default: self-play equilibrium)");
  run->add_option("--eq-iters", cfg.eq_iters, "self-play iterations when no opponent file is given")
      ->capture_default_str();
  run->add_option("--eq-eta", cfg.eq_eta, "self-play step size")->capture_default_str();
  run->add_option("--player", cfg.player, "learner seat, 0 or 1")->capture_default_str();
  run->add_option("--out", cfg.out, "output directory")->capture_default_str();
  run->add_flag("--serial", serial, "run repetitions one after another");

  std::string eq_game = "kuhn", eq_out;
  int eq_k = 3, eq_player = 1;
  long eq_iters = 1000000;
  double eq_eta = 1.0;
  auto* eq = app.add_subcommand("equilibrium", "self-play equilibrium, written as a strategy file");
  eq->add_option("--game", eq_game)->capture_default_str();
  eq->add_option("--goof-k", eq_k)->capture_default_str();
  eq->add_option("--iters", eq_iters)->capture_default_str();
  eq->add_option("--eta", eq_eta, "self-play step size")->capture_default_str();
  eq->add_option("--player", eq_player, "whose strategy to write")->capture_default_str();
  eq->add_option("--out", eq_out, "strategy file; a .json manifest is written next to it")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*eq) return equilibrium_cmd(eq_game, eq_k, eq_iters, eq_eta, eq_player, eq_out);
    cfg.algo = tb::parse_algo(algo);
    cfg.exec = serial ? tb::Exec::Serial : tb::Exec::Parallel;
    auto traces = tb::run_experiment(cfg);
    double mean = 0;
    for (const auto& t : traces) mean += t.regret / cfg.iters / traces.size();
    std::printf("%zu runs of %ld iterations; mean final average regret %.6g; wrote %s\n", traces.size(),
                cfg.iters, mean, cfg.out.c_str());
    return 0;
  } catch (const tb::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
