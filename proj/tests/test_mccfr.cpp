#include <gtest/gtest.h>

#include <cmath>

#include "test_trees.hpp"
#include "treebandit/equilibrium.hpp"
#include "treebandit/mccfr.hpp"

using namespace tb;
using namespace tbt;

TEST(RegretMatching, Examples) {
  EXPECT_EQ(regret_matching({1, 0, 3}), (Vec{0.25, 0, 0.75}));
  EXPECT_EQ(regret_matching({-1, -2}), (Vec{0.5, 0.5}));
  Vec z = regret_matching({0, 0, 0});
  for (double v : z) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
  EXPECT_THROW(regret_matching(Vec{}), std::invalid_argument);
}

TEST(Mccfr, StartsUniform) {
  Tree t = asym3();
  Mccfr m(t, 1);
  EXPECT_EQ(m.current(), uniform_strategy(t));
}

// On one decision point an outcome-sampled update touches the sampled action
// with u/x_a - u and every other action with -u.
TEST(Mccfr, SingleSimplexUpdate) {
  Tree t = three_actions();
  Mccfr m(t, 2);
  Trajectory tr;
  tr.sequences = {1};
  tr.loss = 0.6;
  m.observe_trajectory(tr);
  const double u = -0.6;
  EXPECT_NEAR(m.regrets()[0], -u, 1e-15);
  EXPECT_NEAR(m.regrets()[1], u / (1.0 / 3.0) - u, 1e-15);
  EXPECT_NEAR(m.regrets()[2], -u, 1e-15);
  EXPECT_EQ(m.current(), (Vec{0.5, 0.0, 0.5}));
}

TEST(Mccfr, DeterministicStrategyHasUnitCorrection) {
  Tree t = t1();
  Mccfr m(t, 3);
  Trajectory tr;
  tr.sequences = {0};
  tr.loss = 0.0;
  m.observe_trajectory(tr);  // zero loss keeps regrets at zero
  tr.sequences = {1};
  tr.loss = 1.0;
  m.observe_trajectory(tr);  // u = -1: regret a += 1, b += -1/0.5 + 1
  EXPECT_EQ(m.current(), (Vec{1.0, 0.0}));
  const Vec r = m.regrets();
  tr.sequences = {0};
  tr.loss = 0.5;
  m.observe_trajectory(tr);  // x_a = 1, so u/x_a - u = 0
  EXPECT_NEAR(m.regrets()[0], r[0], 1e-15);
  EXPECT_NEAR(m.regrets()[1], r[1] + 0.5, 1e-15);
}

TEST(Mccfr, StrategiesStayValid) {
  std::mt19937_64 gen(4);
  auto g = std::make_shared<const Game>(kuhn_poker());
  Environment env(g, 0, random_interior(tfsdm_for_player(*g, 1).tree, gen));
  Mccfr m(env.tree(), 5);
  for (int i = 0; i < 2000; ++i) {
    m.step(env);
    ASSERT_TRUE(validate_strategy(env.tree(), m.current()));
  }
  EXPECT_TRUE(validate_strategy(env.tree(), m.average()));
}

TEST(Mccfr, FullInformationSelfPlayConverges) {
  Game g = kuhn_poker();
  PlayerView v0 = tfsdm_for_player(g, 0), v1 = tfsdm_for_player(g, 1);
  auto terms = payoff_terms(g, v0, v1);
  Mccfr a(v0.tree, 1), b(v1.tree, 2);
  double start = exploitability(terms, v0, v1, a.average(), b.average());
  for (int i = 0; i < 20000; ++i) {
    Vec l0 = loss_vector(terms, 0, v0.tree.num_sequences(), b.current());
    Vec l1 = loss_vector(terms, 1, v1.tree.num_sequences(), a.current());
    a.observe_loss(l0);
    b.observe_loss(l1);
  }
  double end = exploitability(terms, v0, v1, a.average(), b.average());
  EXPECT_GT(start, 0.1);
  EXPECT_LT(end, 0.01);
}

TEST(Mccfr, RegretShrinksAgainstFixedOpponent) {
  auto g = std::make_shared<const Game>(kuhn_poker());
  EquilibriumResult eq = compute_equilibrium(*g, 20000);
  Environment env(g, 0, eq.strategy[1]);
  double total = 0;
  const int horizon = 20000, runs = 5;
  for (int r = 0; r < runs; ++r) {
    Mccfr m(env.tree(), derive_seed(3, r));
    double cum = 0;
    for (int t = 0; t < horizon; ++t) cum += m.step(env);
    total += (cum - horizon * env.best_value()) / horizon / runs;
  }
  EXPECT_GE(total, -1e-9);
  EXPECT_LT(total, 0.1);
}
