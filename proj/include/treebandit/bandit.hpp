#pragma once

#include "treebandit/omd.hpp"
#include "treebandit/rng.hpp"

namespace tb {

// multiplier / (2 |Σ|^{3/2} sqrt(T))
double default_step_size(int num_sequences, long horizon, double multiplier = 5.0);

// Bandit regret minimizer: samples a pure strategy from the mirror-descent
// iterate, then turns the scalar loss evaluation into an unbiased estimate.
// Calls must alternate next_strategy / observe_loss_evaluation.
class BanditOmd {
 public:
  BanditOmd(const Tree& tree, double eta, std::uint64_t seed);

  const Vec& next_strategy();
  void observe_loss_evaluation(double l);

  const Vec& mixed() const { return omd_.next_strategy(); }
  const Vec& last_pure() const { return y_; }
  const Vec& last_estimate() const { return est_; }
  const Omd& omd() const { return omd_; }

 private:
  Omd omd_;
  Rng rng_;
  Vec x_, y_, est_, alpha_;
  bool awaiting_ = false;
};

}  // namespace tb
