#pragma once

#include "treebandit/environment.hpp"

namespace tb {

// Positive parts normalized; uniform when none is positive.
Vec regret_matching(const Vec& regrets);
void regret_matching(const double* regrets, int n, double* out);

// Online outcome-sampling Monte Carlo CFR, on-policy and without exploration.
// Baseline only: it needs the path of play, not just the loss evaluation.
class Mccfr {
 public:
  Mccfr(const Tree& tree, std::uint64_t seed);

  // Sequence form of the current regret-matching strategy.
  const Vec& current() const { return x_; }
  const Vec& regrets() const { return regret_; }
  // Behavioral strategy: per sequence, its probability given the decision point.
  const Vec& behavioral() const { return sigma_; }
  Vec average() const;
  long iteration() const { return t_; }

  // One round against env: sample y from current(), play it, update at the
  // visited information sets. Returns loss().x for the strategy that was played.
  double step(const Environment& env);
  // Update from an already sampled trajectory of the current strategy.
  void observe_trajectory(const Trajectory& tr);
  // Full-information counterfactual update from a loss vector (test mode).
  void observe_loss(const Vec& loss);

 private:
  void refresh();

  const Tree* tree_;
  Rng rng_;
  Vec regret_, sigma_, x_, sum_, y_, value_;
  long t_ = 0;
};

}  // namespace tb
