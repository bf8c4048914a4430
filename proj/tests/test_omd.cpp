#include <gtest/gtest.h>

#include <cmath>

#include "test_trees.hpp"
#include "treebandit/omd.hpp"

using namespace tb;
using namespace tbt;

TEST(Omd, Setup) {
  Tree a = t1();
  Omd o(a, 0.1);
  EXPECT_EQ(o.next_strategy(), (Vec{0.5, 0.5}));
  Tree b = t2();
  Omd o2(b, 0.1);
  EXPECT_EQ(o2.next_strategy(), (Vec{0.5, 0.5, 0.25, 0.25, 0.25, 0.25}));
  EXPECT_THROW(Omd(a, 0.0), std::invalid_argument);
  EXPECT_THROW(Omd(a, -1.0), std::invalid_argument);
}

TEST(Omd, NextStrategyIsPure) {
  Tree a = t1();
  Omd o(a, 0.1);
  Vec first = o.next_strategy();
  EXPECT_EQ(o.next_strategy(), first);
  o.observe_loss({1, 0});
  EXPECT_NE(o.next_strategy(), first);
  EXPECT_EQ(o.iteration(), 1);
}

TEST(Omd, SingleStepClosedForm) {
  Tree a = t1();
  Omd o(a, 0.1);
  o.observe_loss({1, 0});
  double e = 0.5 * std::exp(-0.05);
  EXPECT_NEAR(o.next_strategy()[0], e / (e + 0.5), 1e-15);
  EXPECT_NEAR(o.next_strategy()[0], 0.48750, 1e-5);
  EXPECT_NEAR(o.next_strategy()[1], 0.51250, 1e-5);
}

TEST(Omd, FixedPoints) {
  Tree b = t2();
  Omd o(b, 0.3);
  o.observe_loss({0.2, 0.7, 0.1, 0.0, 0.4, 0.9});
  Vec x = o.next_strategy();
  o.observe_loss(Vec(6, 0.0));
  for (int s = 0; s < 6; ++s) EXPECT_NEAR(o.next_strategy()[s], x[s], 1e-14);
  Tree a = t1();
  Omd o1(a, 0.3);
  o1.observe_loss({0.4, 0.4});
  EXPECT_NEAR(o1.next_strategy()[0], 0.5, 1e-15);
}

TEST(Omd, RejectsNegativeLoss) {
  Tree a = t1();
  Omd o(a, 0.1);
  EXPECT_THROW(o.observe_loss({-0.1, 0.0}), std::invalid_argument);
  EXPECT_THROW(o.observe_loss({0.1}), std::invalid_argument);
}

// On one simplex the update is multiplicative weights with temperature w/eta.
TEST(Omd, MultiplicativeWeightsOnSimplex) {
  Tree t = three_actions();
  const double eta = 0.37;
  Omd o(t, eta);
  const double w = o.weights().decision[0];
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0, 2);
  Vec cum(3, 0.0);
  for (int it = 0; it < 200; ++it) {
    Vec l{u(gen), u(gen), u(gen)};
    o.observe_loss(l);
    for (int a = 0; a < 3; ++a) cum[a] += l[a];
    double m = *std::min_element(cum.begin(), cum.end());
    double z = 0;
    Vec p(3);
    for (int a = 0; a < 3; ++a) z += p[a] = std::exp(-eta * (cum[a] - m) / w);
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(o.next_strategy()[a], p[a] / z, 1e-12);
  }
}

TEST(Omd, IteratesStayInterior) {
  std::mt19937_64 gen(2);
  std::exponential_distribution<double> ex(0.3);
  for (const Tree& t : small_suite()) {
    Omd o(t, 0.5);
    for (int it = 0; it < 300; ++it) {
      Vec l(t.num_sequences());
      for (double& v : l) v = ex(gen);
      o.observe_loss(l);
      ASSERT_TRUE(validate_strategy(t, o.next_strategy()));
      for (double v : o.next_strategy()) ASSERT_GT(v, 0.0);
    }
  }
}

// Regret against every vertex stays below phi(z)/eta + eta sqrt(3D) sum ||l||^2_{*,x}.
TEST(Omd, RegretBound) {
  std::mt19937_64 gen(3);
  std::exponential_distribution<double> ex(1.0);
  for (const Tree& t : {t1(), t2(), asym3()}) {
    auto pures = enumerate_pure_strategies(t);
    for (double eta : {0.02, 0.2, 1.0}) {
      Omd o(t, eta);
      const auto& w = o.weights();
      Vec cum(t.num_sequences(), 0.0);
      double played = 0, norms = 0;
      for (int it = 0; it < 2000; ++it) {
        Vec l(t.num_sequences());
        for (double& v : l) v = ex(gen);
        const Vec& x = o.next_strategy();
        played += dot(l, x);
        norms += local_dual_norm_sq(t, w, x, l);
        for (int s = 0; s < t.num_sequences(); ++s) cum[s] += l[s];
        o.observe_loss(l);
      }
      const double slack = eta * std::sqrt(3.0 * t.max_depth()) * norms;
      for (const auto& z : pures)
        EXPECT_LE(played - dot(cum, z), dgf_value_closure(t, w, z) / eta + slack);
    }
  }
}
