#include "treebandit/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "treebandit/omd.hpp"

namespace tb {

double exploitability(const std::vector<PayoffTerm>& terms, const PlayerView& v0, const PlayerView& v1,
                      const Vec& x0, const Vec& x1) {
  double c0 = 0, c1 = 0;
  // loss_vector gives -u for player 0 and u for player 1
  Vec l0 = loss_vector(terms, 0, v0.tree.num_sequences(), x1, &c0);
  Vec l1 = loss_vector(terms, 1, v1.tree.num_sequences(), x0, &c1);
  const double best0 = -(linear_min_max(v0.tree, l0).min + c0);  // max_y0 u(y0, x1)
  const double best1 = linear_min_max(v1.tree, l1).min + c1;     // min_y1 u(x0, y1)
  return std::max(0.0, best0 - best1);
}

EquilibriumResult compute_equilibrium(const Game& game, long iterations, double eta) {
  if (iterations < 1) throw std::invalid_argument("compute_equilibrium: iterations must be >= 1");
  if (!(eta > 0)) throw std::invalid_argument("compute_equilibrium: eta must be positive");
  PlayerView v0 = tfsdm_for_player(game, 0), v1 = tfsdm_for_player(game, 1);
  auto terms = payoff_terms(game, v0, v1);
  Omd omd0(v0.tree, eta), omd1(v1.tree, eta);
  const int n0 = v0.tree.num_sequences(), n1 = v1.tree.num_sequences();
  EquilibriumResult r;
  r.strategy[0].assign(n0, 0.0);
  r.strategy[1].assign(n1, 0.0);
  for (long t = 0; t < iterations; ++t) {
    const Vec& x0 = omd0.next_strategy();
    const Vec& x1 = omd1.next_strategy();
    for (int s = 0; s < n0; ++s) r.strategy[0][s] += x0[s];
    for (int s = 0; s < n1; ++s) r.strategy[1][s] += x1[s];
    // lifting shifts every strategy's loss by the same amount, which the update ignores
    Vec l0 = lift_nonnegative(v0.tree, loss_vector(terms, 0, n0, x1));
    Vec l1 = lift_nonnegative(v1.tree, loss_vector(terms, 1, n1, x0));
    omd0.observe_loss(l0);
    omd1.observe_loss(l1);
  }
  for (double& v : r.strategy[0]) v /= iterations;
  for (double& v : r.strategy[1]) v /= iterations;
  r.iterations = iterations;
  r.eta = eta;
  r.exploitability = exploitability(terms, v0, v1, r.strategy[0], r.strategy[1]);
  return r;
}

}  // namespace tb
