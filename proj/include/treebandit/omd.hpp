#pragma once

#include "treebandit/dilated_entropy.hpp"

namespace tb {

// Online mirror descent over the strategy polytope with the dilated entropy.
// Keeps a pointer to the tree, which must outlive the instance.
class Omd {
 public:
  Omd(const Tree& tree, double eta);

  const Vec& next_strategy() const { return x_; }
  // loss must be entrywise nonnegative.
  void observe_loss(const Vec& loss);

  double step_size() const { return eta_; }
  long iteration() const { return t_; }
  const DgfWeights& weights() const { return w_; }
  const Tree& tree() const { return *tree_; }

 private:
  const Tree* tree_;
  DgfWeights w_;
  double eta_;
  long t_ = 0;
  Vec x_, g_;
};

}  // namespace tb
