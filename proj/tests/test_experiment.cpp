#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "treebandit/equilibrium.hpp"
#include "treebandit/experiment.hpp"
#include "treebandit/strategy_io.hpp"

using namespace tb;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream f(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(f, l);) out.push_back(l);
  return out;
}

// CSV rows with the elapsed_ns column removed.
std::string without_timing(const fs::path& p) {
  std::string out;
  for (const auto& l : lines(p)) {
    std::stringstream ss(l);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col++ != 2) out += cell + ",";
    }
    out += "\n";
  }
  return out;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("tb_experiment_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Experiment, KuhnFilesAndDeterminism) {
  ExperimentConfig c;
  c.game = "kuhn";
  c.iters = 10000;
  c.runs = 3;
  c.seed = 1;
  c.eq_iters = 20000;
  c.out = scratch("a").string();
  run_experiment(c);
  for (int i = 0; i < 3; ++i) {
    auto rows = lines(fs::path(c.out) / ("run_" + std::to_string(i) + ".csv"));
    ASSERT_EQ(rows.size(), 10001u);
    EXPECT_EQ(rows[0], kCsvHeader);
  }
  auto manifest = nlohmann::json::parse(std::ifstream(fs::path(c.out) / "manifest.json"));
  EXPECT_EQ(manifest["num_sequences"], 13);
  EXPECT_EQ(manifest["runs"], 3);
  EXPECT_LT(manifest["raw_min"].get<double>(), manifest["raw_max"].get<double>());

  ExperimentConfig again = c;
  again.out = scratch("b").string();
  again.exec = Exec::Serial;
  run_experiment(again);
  for (int i = 0; i < 3; ++i) {
    const std::string name = "run_" + std::to_string(i) + ".csv";
    EXPECT_EQ(without_timing(fs::path(c.out) / name), without_timing(fs::path(again.out) / name));
  }
  // replay from the saved opponent file
  ExperimentConfig replay = c;
  replay.opponent = (fs::path(c.out) / "opponent.txt").string();
  replay.out = scratch("c").string();
  run_experiment(replay);
  EXPECT_EQ(without_timing(fs::path(c.out) / "run_1.csv"), without_timing(fs::path(replay.out) / "run_1.csv"));
  for (const char* d : {"a", "b", "c"}) fs::remove_all(scratch(d));
}

TEST(Experiment, AverageRegretNonnegativeAndMccfr) {
  ExperimentConfig c;
  c.game = "matrix";
  c.algo = Algo::Mccfr;
  c.iters = 500;
  c.runs = 2;
  c.eq_iters = 1000;
  c.out = scratch("m").string();
  auto traces = run_experiment(c);
  for (const auto& t : traces)
    for (const auto& r : t.rows) EXPECT_GE(r.avg_regret, -1e-9);
  fs::remove_all(c.out);
}

TEST(Experiment, ConfigErrors) {
  ExperimentConfig c;
  c.out = scratch("e").string();
  c.iters = 0;
  EXPECT_THROW(run_experiment(c), ConfigError);
  c.iters = 10;
  c.game = "chess";
  EXPECT_THROW(run_experiment(c), ConfigError);
  c.game = "kuhn";
  c.opponent = "/nonexistent/strategy.txt";
  EXPECT_THROW(run_experiment(c), ConfigError);
  EXPECT_THROW(parse_algo("cfr+"), ConfigError);

  // strategy for another game's tree: hash mismatch
  fs::create_directories(c.out);
  Game m = matrix_game();
  auto wrong = (fs::path(c.out) / "wrong.txt").string();
  write_strategy(wrong, tfsdm_for_player(m, 1).tree, {0.5, 0.5});
  c.opponent = wrong;
  EXPECT_THROW(run_experiment(c), std::runtime_error);
  fs::remove_all(c.out);
}

// Separately tuned horizons: final average regret drops from 10^3 to 10^5 iterations.
TEST(Experiment, AverageRegretDecreasesWithHorizon) {
  auto g = std::make_shared<const Game>(matrix_game());
  EquilibriumResult eq = compute_equilibrium(*g, 20000);
  Environment env(g, 0, eq.strategy[1]);
  auto mean_final = [&](long iters) {
    RunOptions opt;
    opt.iters = iters;
    opt.record = false;
    double m = 0;
    for (const auto& t : run_batch(env, opt, 3, 30, Exec::Parallel)) m += t.regret / iters / 30;
    return m;
  };
  const double short_run = mean_final(1000), long_run = mean_final(100000);
  EXPECT_LT(long_run, short_run);
}
