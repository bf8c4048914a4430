#include "treebandit/omd.hpp"

namespace tb {

Omd::Omd(const Tree& tree, double eta) : tree_(&tree), w_(compute_weights(tree)), eta_(eta) {
  if (!(eta > 0)) throw std::invalid_argument("Omd: step size must be positive");
  x_ = uniform_strategy(tree);
}

void Omd::observe_loss(const Vec& loss) {
  if (static_cast<int>(loss.size()) != tree_->num_sequences())
    throw std::invalid_argument("Omd: loss length does not match the tree");
  for (double v : loss)
    if (!(v >= 0)) throw std::invalid_argument("Omd: loss estimate must be nonnegative");
  dgf_gradient(*tree_, w_, x_, g_);
  for (std::size_t i = 0; i < g_.size(); ++i) g_[i] -= eta_ * loss[i];
  arg_conjugate_inplace(*tree_, w_, g_, x_);
  ++t_;
}

}  // namespace tb
