#pragma once

#include <memory>

#include "treebandit/game.hpp"
#include "treebandit/rng.hpp"

namespace tb {

struct NormalizedLoss {
  Vec loss;
  double min = 0, max = 0;  // extremes of raw.y over pure strategies
  bool constant = false;    // max == min; loss is then all zero
};

// Affine map of raw onto a loss whose pure evaluations span exactly [0, 1]:
// raw / (M - m) minus m / (M - m) on the root decision point's actions.
NormalizedLoss normalize_loss(const Tree& tree, const Vec& raw);

struct Trajectory {
  std::vector<int> sequences;  // learner sequences taken, root to leaf
  double loss = 0;             // normalized loss of the terminal reached
  int terminal = -1;           // game node
};

// Learner facing a fixed opponent strategy. The loss vector is the same in
// every round, so evaluate() is the exact expected loss of a pure strategy.
class Environment {
 public:
  Environment(std::shared_ptr<const Game> game, int player, Vec opponent);

  const Tree& tree() const { return view_[player_].tree; }
  const Vec& loss() const { return norm_.loss; }
  double raw_min() const { return norm_.min; }
  double raw_max() const { return norm_.max; }
  const Vec& opponent() const { return opponent_; }
  int player() const { return player_; }
  const Game& game() const { return *game_; }
  const PlayerView& view(int p) const { return view_[p]; }
  // min over pure strategies of loss().y
  double best_value() const { return best_; }

  double evaluate(const Vec& y) const;
  // Plays y against sampled chance and opponent moves.
  Trajectory sample_trajectory(const Vec& y, Rng& rng) const;

 private:
  std::shared_ptr<const Game> game_;
  int player_;
  PlayerView view_[2];
  Vec opponent_;
  NormalizedLoss norm_;
  double offset_ = 0;  // raw loss of terminals reached before the learner acts
  double best_ = 0;
};

}  // namespace tb
