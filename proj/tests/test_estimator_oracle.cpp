#include <gtest/gtest.h>

#include <cmath>

#include "test_trees.hpp"
#include "treebandit/estimator_oracle.hpp"

using namespace tb;
using namespace tbt;

namespace {
Eigen::VectorXd as_eigen(const Vec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }
}  // namespace

TEST(Autocorrelation, SingleSimplex) {
  Eigen::MatrixXd c = autocorrelation_structured(t1(), {0.3, 0.7});
  EXPECT_DOUBLE_EQ(c(0, 0), 0.3);
  EXPECT_DOUBLE_EQ(c(1, 1), 0.7);
  EXPECT_DOUBLE_EQ(c(0, 1), 0.0);
}

TEST(Autocorrelation, DeterministicObservationChildren) {
  TreeSpec s;
  int k = s.add_observation("k");
  s.root = k;
  int a = s.add_decision("A"), b = s.add_decision("B");
  s.add_edge(k, "1", a);
  s.add_edge(k, "2", b);
  s.add_edge(a, "only", -1);
  s.add_edge(b, "only", -1);
  Tree t = build_tree(s);
  Eigen::MatrixXd c = autocorrelation_structured(t, uniform_strategy(t));
  EXPECT_EQ(c, Eigen::MatrixXd::Ones(3, 3));
}

TEST(Autocorrelation, MatchesEnumeration) {
  std::mt19937_64 gen(1);
  for (const Tree& t : small_suite()) {
    for (int rep = 0; rep < 5; ++rep) {
      Vec x = random_interior(t, gen);
      Eigen::MatrixXd d = autocorrelation_structured(t, x) - autocorrelation_bruteforce(t, x);
      EXPECT_LT(d.cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Autocorrelation, RankEqualsSpanOfPureStrategies) {
  std::mt19937_64 gen(2);
  for (const Tree& t : small_suite()) {
    auto pures = enumerate_pure_strategies(t);
    Eigen::MatrixXd v(t.num_sequences(), pures.size());
    for (std::size_t i = 0; i < pures.size(); ++i) v.col(i) = as_eigen(pures[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> span(v);
    Eigen::FullPivLU<Eigen::MatrixXd> corr(autocorrelation_structured(t, random_interior(t, gen)));
    span.setThreshold(1e-10);
    corr.setThreshold(1e-10);
    EXPECT_EQ(span.rank(), corr.rank());
  }
}

TEST(GeneralizedInverse, SingleSimplex) {
  Eigen::MatrixXd g = generalized_inverse(t1(), {0.5, 0.5});
  EXPECT_DOUBLE_EQ(g(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(g(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(g(0, 1), 0.0);
}

TEST(GeneralizedInverse, Laws) {
  std::mt19937_64 gen(3);
  for (const Tree& t : small_suite()) {
    auto pures = enumerate_pure_strategies(t);
    for (int rep = 0; rep < 20; ++rep) {
      Vec x = random_interior(t, gen);
      Eigen::MatrixXd c = autocorrelation_structured(t, x);
      Eigen::MatrixXd g = generalized_inverse(t, x);
      double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
      EXPECT_LT((c * g * c - c).cwiseAbs().maxCoeff() / scale, 1e-8);
      Eigen::VectorXd gx = g * as_eigen(x);
      for (const auto& z : pures) EXPECT_NEAR(as_eigen(z).dot(gx), 1.0, 1e-9);
    }
  }
}

TEST(GeneralizedInverse, MuSumsToChildCount) {
  std::mt19937_64 gen(4);
  for (const Tree& t : small_suite()) {
    Vec x = random_interior(t, gen);
    auto pures = enumerate_pure_strategies(t);
    for (int s = 0; s < t.num_sequences(); ++s) {
      if (t.terminal(s)) continue;
      Eigen::VectorXd mu = observation_mu(t, x, s);
      for (const auto& y : pures)
        if (y[s] == 1.0) EXPECT_NEAR(mu.dot(as_eigen(y)), double(t.children(s).size()), 1e-9);
    }
  }
}

TEST(OrthogonalVector, TerminalDecisionPointIsZero) {
  Eigen::VectorXd b = orthogonal_vector(t1(), {0.5, 0.5}, {1, 0});
  EXPECT_EQ(b, Eigen::VectorXd::Zero(2));
}

TEST(OrthogonalVector, ExpectationIsConstantOnPolytope) {
  std::mt19937_64 gen(5);
  for (const Tree& t : small_suite()) {
    auto pures = enumerate_pure_strategies(t);
    for (int rep = 0; rep < 5; ++rep) {
      Vec x = rep == 0 ? uniform_strategy(t) : random_interior(t, gen);
      Eigen::VectorXd eb = Eigen::VectorXd::Zero(t.num_sequences());
      for (const auto& y : pures) eb += pure_strategy_probability(t, x, y) * orthogonal_vector(t, x, y);
      for (const auto& z : pures) EXPECT_NEAR(eb.dot(as_eigen(z)), t.subtree_count(0) - 1.0, 1e-9);
    }
  }
  // T2 has three decision points
  Tree b = t2();
  EXPECT_EQ(b.subtree_count(0) - 1, 2);
}

TEST(OracleEstimate, HandValues) {
  EXPECT_EQ(oracle_loss_estimate(t1(), {0.5, 0.5}, {1, 0}, 0.6), (Vec{1.2, 0.0}));
  EXPECT_EQ(oracle_loss_estimate(t1(), {0.5, 0.5}, {1, 0}, 0.0), (Vec{0.0, 0.0}));
}

TEST(OracleEstimate, RelaxedUnbiasedness) {
  std::mt19937_64 gen(6);
  for (const Tree& t : small_suite()) {
    auto pures = enumerate_pure_strategies(t);
    Vec x = random_interior(t, gen);
    Vec loss = random_unit_loss(t, gen);
    Vec mean(t.num_sequences(), 0.0);
    for (const auto& y : pures) {
      Vec e = oracle_loss_estimate(t, x, y, dot(loss, y));
      for (int s = 0; s < t.num_sequences(); ++s) mean[s] += pure_strategy_probability(t, x, y) * e[s];
    }
    for (const auto& a : pures)
      EXPECT_NEAR(dot(mean, a) - dot(mean, pures[0]), dot(loss, a) - dot(loss, pures[0]), 1e-9);
  }
}

TEST(Oracle, SizeCap) {
  std::mt19937_64 gen(7);
  Tree big = random_tree(gen, 400, 8);
  while (big.num_sequences() <= kOracleMaxSequences) big = random_tree(gen, 400, 8);
  EXPECT_THROW(generalized_inverse(big, uniform_strategy(big)), std::length_error);
}
