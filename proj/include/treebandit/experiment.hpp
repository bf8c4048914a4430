#pragma once

#include <string>
#include <vector>

#include "treebandit/batch.hpp"
#include "treebandit/environment.hpp"

namespace tb {

enum class Algo { BanditOmd, Mccfr };
Algo parse_algo(const std::string& name);
std::string algo_name(Algo a);

struct RunOptions {
  Algo algo = Algo::BanditOmd;
  long iters = 1000;
  double eta_mult = 5.0;          // bandit step size multiplier
  bool record = true;             // keep one row per iteration
  std::vector<long> checkpoints;  // iterations (1-based) at which to store the average regret
};

struct ExperimentRecord {
  int run_id;
  long iter;
  long long elapsed_ns;
  double loss_eval, cum_loss, avg_regret;
};

struct RunTrace {
  int run_id = 0;
  std::uint64_t seed = 0;
  std::vector<ExperimentRecord> rows;
  std::vector<double> checkpoint_regret;
  double cum_loss = 0;
  double regret = 0;  // cum_loss - iters * best pure value
};

// loss_eval is loss.y for the bandit learner's pure strategy and loss.x for
// MCCFR's current mixed strategy.
RunTrace run_single(const Environment& env, const RunOptions& opt, std::uint64_t seed, int run_id);
// Run i is seeded with derive_seed(base_seed, i).
std::vector<RunTrace> run_batch(const Environment& env, const RunOptions& opt, std::uint64_t base_seed,
                                int runs, Exec exec);

extern const char* const kCsvHeader;
void write_csv(const std::string& path, const RunTrace& trace);

struct ExperimentConfig {
  std::string game = "kuhn";
  int goof_k = 3;
  int player = 0;
  Algo algo = Algo::BanditOmd;
  long iters = 10000;
  int runs = 1;
  std::uint64_t seed = 1;
  double eta_mult = 5.0;
  std::string opponent;   // strategy file; empty: self-play equilibrium computed here
  long eq_iters = 100000;
  double eq_eta = 1.0;
  std::string out = "out";
  Exec exec = Exec::Parallel;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes run_<i>.csv for every run and manifest.json into config.out.
// Throws ConfigError for invalid settings, std::runtime_error for I/O and file problems.
std::vector<RunTrace> run_experiment(const ExperimentConfig& config);

}  // namespace tb
