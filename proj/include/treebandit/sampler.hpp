#pragma once

#include "treebandit/rng.hpp"
#include "treebandit/tree.hpp"

namespace tb {

// Draws a pure strategy whose expectation is x: at every reached decision
// point j an action is picked with probability x_ja / x_{p_j}.
Vec sample(const Tree& tree, const Vec& x, Rng& rng);
void sample(const Tree& tree, const Vec& x, Rng& rng, Vec& y);

// Inverse-CDF draw over weights[0, n) summing to total; the last positive
// bucket takes whatever rounding leaves over.
int sample_index(const double* weights, int n, double total, Rng& rng);

}  // namespace tb
