#include "treebandit/bandit.hpp"

#include <cmath>
#include <stdexcept>

#include "treebandit/estimator.hpp"
#include "treebandit/sampler.hpp"

namespace tb {

double default_step_size(int num_sequences, long horizon, double multiplier) {
  const double n = num_sequences;
  return multiplier / (2.0 * n * std::sqrt(n) * std::sqrt(static_cast<double>(horizon)));
}

BanditOmd::BanditOmd(const Tree& tree, double eta, std::uint64_t seed)
    : omd_(tree, eta), rng_(seed) {}

const Vec& BanditOmd::next_strategy() {
  if (awaiting_) throw std::logic_error("BanditOmd: next_strategy called twice without feedback");
  x_ = omd_.next_strategy();
  sample(omd_.tree(), x_, rng_, y_);
  awaiting_ = true;
  return y_;
}

void BanditOmd::observe_loss_evaluation(double l) {
  if (!awaiting_) throw std::logic_error("BanditOmd: feedback without a pending strategy");
  if (!(l >= 0.0 && l <= 1.0))
    throw std::invalid_argument("BanditOmd: loss evaluation must lie in [0, 1]");
  loss_estimate(omd_.tree(), x_, y_, l, est_, alpha_);
  omd_.observe_loss(est_);
  awaiting_ = false;
}

}  // namespace tb
