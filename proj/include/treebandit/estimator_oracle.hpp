#pragma once

#include <Eigen/Dense>

#include "treebandit/tree.hpp"

namespace tb {

// Dense reference constructions for small trees (|Σ| <= 64). The second
// moment of the sampler, a structured generalized inverse of it, and the
// correction vector b that together define l C⁻ y + b.
constexpr int kOracleMaxSequences = 64;

Eigen::MatrixXd autocorrelation_structured(const Tree& tree, const Vec& x);
// Σ_y P(y) y yᵀ by enumeration.
Eigen::MatrixXd autocorrelation_bruteforce(const Tree& tree, const Vec& x);
Eigen::MatrixXd generalized_inverse(const Tree& tree, const Vec& x);
Eigen::VectorXd orthogonal_vector(const Tree& tree, const Vec& x, const Vec& y);
// Stacked C⁻_j x̂_j over the decision points reached after sequence s.
Eigen::VectorXd observation_mu(const Tree& tree, const Vec& x, int s);
Vec oracle_loss_estimate(const Tree& tree, const Vec& x, const Vec& y, double l);

}  // namespace tb
