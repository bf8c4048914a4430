#include "treebandit/environment.hpp"

#include <stdexcept>

#include "treebandit/sampler.hpp"

namespace tb {

NormalizedLoss normalize_loss(const Tree& tree, const Vec& raw) {
  if (static_cast<int>(raw.size()) != tree.num_sequences())
    throw std::invalid_argument("normalize_loss: vector length does not match the tree");
  NormalizedLoss out;
  MinMax mm = linear_min_max(tree, raw);
  out.min = mm.min;
  out.max = mm.max;
  out.loss.assign(raw.size(), 0.0);
  if (!(mm.max > mm.min)) {
    out.constant = true;
    return out;
  }
  const double range = mm.max - mm.min;
  for (std::size_t s = 0; s < raw.size(); ++s) out.loss[s] = raw[s] / range;
  for (int s = tree.seq_begin(0); s < tree.seq_end(0); ++s) out.loss[s] -= mm.min / range;
  return out;
}

Environment::Environment(std::shared_ptr<const Game> game, int player, Vec opponent)
    : game_(std::move(game)), player_(player), opponent_(std::move(opponent)) {
  if (player != 0 && player != 1) throw std::invalid_argument("Environment: player must be 0 or 1");
  view_[0] = tfsdm_for_player(*game_, 0);
  view_[1] = tfsdm_for_player(*game_, 1);
  if (!validate_strategy(view_[1 - player].tree, opponent_))
    throw std::invalid_argument("Environment: invalid opponent strategy");
  auto terms = payoff_terms(*game_, view_[0], view_[1]);
  Vec raw = loss_vector(terms, player, tree().num_sequences(), opponent_, &offset_);
  norm_ = normalize_loss(tree(), raw);
  best_ = norm_.constant ? 0.0 : linear_min_max(tree(), norm_.loss).min;
}

double Environment::evaluate(const Vec& y) const {
  if (static_cast<int>(y.size()) != tree().num_sequences())
    throw std::invalid_argument("Environment::evaluate: wrong tree");
  double v = dot(norm_.loss, y);
  // exact in real arithmetic; clamp the last-ulp rounding
  return std::min(1.0, std::max(0.0, v));
}

Trajectory Environment::sample_trajectory(const Vec& y, Rng& rng) const {
  if (static_cast<int>(y.size()) != tree().num_sequences())
    throw std::invalid_argument("Environment::sample_trajectory: wrong tree");
  Trajectory tr;
  const PlayerView& own = view_[player_];
  const PlayerView& opp = view_[1 - player_];
  int v = game_->root;
  for (;;) {
    const GameNode& node = game_->nodes[v];
    if (node.type == GameNodeType::Terminal) break;
    const int n = static_cast<int>(node.children.size());
    int a = 0;
    if (node.type == GameNodeType::Chance) {
      a = sample_index(node.probs.data(), n, 1.0, rng);
    } else if (node.player == player_) {
      const int b = own.node_seq[v];
      a = -1;
      for (int i = 0; i < n; ++i)
        if (y[b + i] == 1.0) a = i;
      if (a < 0) throw std::invalid_argument("sample_trajectory: y is not a pure strategy");
      tr.sequences.push_back(b + a);
    } else {
      const int p = opp.last_seq[v];
      const double xp = p < 0 ? 1.0 : opponent_[p];
      a = sample_index(opponent_.data() + opp.node_seq[v], n, xp, rng);
    }
    v = node.children[a];
  }
  tr.terminal = v;
  // single terminals may fall outside [0, 1]; the expectation over trajectories is evaluate(y)
  double raw = -game_->nodes[v].payoff * (player_ == 0 ? 1.0 : -1.0);
  tr.loss = norm_.constant ? 0.0 : (raw - offset_ - norm_.min) / (norm_.max - norm_.min);
  return tr;
}

}  // namespace tb
