#pragma once

#include "treebandit/game.hpp"

namespace tb {

// Saddle-point gap max_y0 u(y0, x1) - min_y1 u(x0, y1), in payoff units.
double exploitability(const std::vector<PayoffTerm>& terms, const PlayerView& v0, const PlayerView& v1,
                      const Vec& x0, const Vec& x1);

struct EquilibriumResult {
  Vec strategy[2];  // time averages, sequence form
  double exploitability = 0;
  long iterations = 0;
  double eta = 0;
};

// Full-information self-play: two mirror-descent learners exchange exact loss
// vectors (raw payoff units) each round.
EquilibriumResult compute_equilibrium(const Game& game, long iterations, double eta = 1.0);

}  // namespace tb
