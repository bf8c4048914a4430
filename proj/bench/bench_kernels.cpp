// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "test_trees.hpp"
#include "treebandit/batch.hpp"
#include "treebandit/experiment.hpp"

using namespace tb;

namespace {

struct KuhnFixture {
  std::shared_ptr<const Game> game = std::make_shared<const Game>(kuhn_poker());
  PlayerView view = tfsdm_for_player(*game, 0);
  Environment env{game, 0, uniform_strategy(tfsdm_for_player(*game, 1).tree)};
  DgfWeights w = compute_weights(view.tree);
};

const KuhnFixture& kuhn() {
  static KuhnFixture f;
  return f;
}

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_ExactMoments(benchmark::State& state) {
  const auto& k = kuhn();
  Vec x = uniform_strategy(k.env.tree());
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_estimator_moments(k.env.tree(), k.w, x, k.env.loss(), exec_of(state)));
}

void BM_SampledMoments(benchmark::State& state) {
  const auto& k = kuhn();
  Vec x = uniform_strategy(k.env.tree());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sampled_estimator_moments(k.env.tree(), k.w, x, k.env.loss(), 100000, 1, exec_of(state)));
}

void BM_RunBatch(benchmark::State& state) {
  const auto& k = kuhn();
  RunOptions opt;
  opt.iters = 10000;
  opt.record = false;
  opt.algo = state.range(1) ? Algo::Mccfr : Algo::BanditOmd;
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(k.env, opt, 1, 32, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_ExactMoments)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SampledMoments)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunBatch)->ArgNames({"parallel", "mccfr"})->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
