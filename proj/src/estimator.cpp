#include "treebandit/estimator.hpp"

#include <stdexcept>

namespace tb {

void loss_estimate(const Tree& tree, const Vec& x, const Vec& y, double l, Vec& out,
                   Vec& alpha) {
  const int ns = tree.num_sequences();
  if (static_cast<int>(x.size()) != ns || static_cast<int>(y.size()) != ns)
    throw std::invalid_argument("loss_estimate: vector length does not match the tree");
  if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("loss_estimate: l must lie in [0, 1]");
  out.assign(ns, 0.0);
  alpha.assign(tree.num_decisions(), 0.0);
  // Decision points in preorder: alpha of a child is known once its parent is done.
  for (int j = 0; j < tree.num_decisions(); ++j) {
    const int p = tree.parent_seq(j);
    const double xp = p < 0 ? 1.0 : x[p];
    const double a_j = alpha[j];
    const double nj = tree.subtree_count(j);
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      if (!(x[s] > 0)) throw std::domain_error("loss_estimate: x must be strictly positive");
      const double ratio = y[s] / x[s];
      if (tree.terminal(s)) {
        out[s] = a_j / xp + ratio * (l + nj - 1.0);
        continue;
      }
      out[s] = ratio * (nj - tree.after_count(s));
      const auto kids = tree.children(s);
      const double n = static_cast<double>(kids.size());
      const double passed = a_j * x[s] / xp;
      const double child_alpha = passed / n + (n - 1.0) / n * (1.0 - l) * y[s];
      for (int c : kids) alpha[c] = child_alpha;
    }
  }
}

Vec loss_estimate(const Tree& tree, const Vec& x, const Vec& y, double l) {
  Vec out, alpha;
  loss_estimate(tree, x, y, l, out, alpha);
  return out;
}

}  // namespace tb
