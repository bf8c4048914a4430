#include "treebandit/sampler.hpp"

#include <stdexcept>

namespace tb {

int sample_index(const double* weights, int n, double total, Rng& rng) {
  double u = rng.uniform() * total;
  double acc = 0;
  for (int i = 0; i + 1 < n; ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  // rounding leftovers go to the last action with positive weight
  for (int i = n - 1; i > 0; --i)
    if (weights[i] > 0) return i;
  return weights[0] > 0 ? 0 : n - 1;
}

void sample(const Tree& tree, const Vec& x, Rng& rng, Vec& y) {
  if (static_cast<int>(x.size()) != tree.num_sequences())
    throw std::invalid_argument("sample: vector length does not match the tree");
  y.assign(x.size(), 0.0);
  int j = 0;
  while (j < tree.num_decisions()) {
    const int p = tree.parent_seq(j);
    if (p >= 0 && y[p] == 0.0) {
      j = tree.dp_end(j);
      continue;
    }
    const double xp = p < 0 ? 1.0 : x[p];
    if (!(xp > 0)) throw std::domain_error("sample: zero parent mass on a reached decision point");
    const int b = tree.seq_begin(j);
    y[b + sample_index(x.data() + b, tree.num_actions(j), xp, rng)] = 1.0;
    ++j;
  }
}

Vec sample(const Tree& tree, const Vec& x, Rng& rng) {
  Vec y;
  sample(tree, x, rng, y);
  return y;
}

}  // namespace tb
