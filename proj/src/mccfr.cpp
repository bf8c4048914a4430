#include "treebandit/mccfr.hpp"

#include "treebandit/sampler.hpp"

namespace tb {

void regret_matching(const double* regrets, int n, double* out) {
  double total = 0;
  for (int i = 0; i < n; ++i) total += regrets[i] > 0 ? regrets[i] : 0.0;
  for (int i = 0; i < n; ++i) out[i] = total > 0 ? (regrets[i] > 0 ? regrets[i] / total : 0.0) : 1.0 / n;
}

Vec regret_matching(const Vec& regrets) {
  if (regrets.empty()) throw std::invalid_argument("regret_matching: empty vector");
  Vec out(regrets.size());
  regret_matching(regrets.data(), static_cast<int>(regrets.size()), out.data());
  return out;
}

Mccfr::Mccfr(const Tree& tree, std::uint64_t seed)
    : tree_(&tree),
      rng_(seed),
      regret_(tree.num_sequences(), 0.0),
      sigma_(tree.num_sequences(), 0.0),
      x_(tree.num_sequences(), 0.0),
      sum_(tree.num_sequences(), 0.0) {
  refresh();
}

void Mccfr::refresh() {
  const Tree& t = *tree_;
  for (int j = 0; j < t.num_decisions(); ++j) {
    const int b = t.seq_begin(j);
    regret_matching(regret_.data() + b, t.num_actions(j), sigma_.data() + b);
    const int p = t.parent_seq(j);
    const double xp = p < 0 ? 1.0 : x_[p];
    for (int s = b; s < t.seq_end(j); ++s) x_[s] = sigma_[s] * xp;
  }
}

Vec Mccfr::average() const {
  if (t_ == 0) return x_;
  Vec avg(sum_);
  for (double& v : avg) v /= t_;
  return avg;
}

void Mccfr::observe_trajectory(const Trajectory& tr) {
  const Tree& t = *tree_;
  for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += x_[i];
  const double u = -tr.loss;
  for (int s : tr.sequences) {
    const int j = t.owner(s), p = t.parent_seq(j);
    const double xp = p < 0 ? 1.0 : x_[p];
    // sampled counterfactual values: u / x_s for the action taken, 0 for the others
    const double v_node = u / xp;
    for (int a = t.seq_begin(j); a < t.seq_end(j); ++a) regret_[a] -= v_node;
    regret_[s] += u / x_[s];
  }
  ++t_;
  refresh();
}

double Mccfr::step(const Environment& env) {
  const double played = dot(env.loss(), x_);
  sample(*tree_, x_, rng_, y_);
  observe_trajectory(env.sample_trajectory(y_, rng_));
  return played;
}

void Mccfr::observe_loss(const Vec& loss) {
  const Tree& t = *tree_;
  for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += x_[i];
  // counterfactual loss of each sequence, bottom-up, with behavioral weights
  value_ = loss;
  for (int j = t.num_decisions() - 1; j >= 0; --j) {
    const int p = t.parent_seq(j);
    double node = 0;
    for (int s = t.seq_begin(j); s < t.seq_end(j); ++s) node += sigma_[s] * value_[s];
    for (int s = t.seq_begin(j); s < t.seq_end(j); ++s) regret_[s] += node - value_[s];
    if (p >= 0) value_[p] += node;
  }
  ++t_;
  refresh();
}

}  // namespace tb
