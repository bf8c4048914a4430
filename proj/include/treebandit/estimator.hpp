#pragma once

#include "treebandit/tree.hpp"

namespace tb {

// Unbiased (on differences of strategies) nonnegative loss estimate built from
// the scalar feedback l = loss.y, in one pass over the tree.
Vec loss_estimate(const Tree& tree, const Vec& x, const Vec& y, double l);
void loss_estimate(const Tree& tree, const Vec& x, const Vec& y, double l, Vec& out,
                   Vec& alpha);

}  // namespace tb
