#pragma once

#include <Eigen/Dense>

#include "treebandit/tree.hpp"

namespace tb {

struct DgfWeights {
  Vec decision;  // w_j per decision point
  Vec after;     // weight of the observation point reached by each sequence (0 if terminal)
};

DgfWeights compute_weights(const Tree& tree);

double dgf_value(const Tree& tree, const DgfWeights& w, const Vec& x);
// Continuous extension to the closed polytope (0 log 0 = 0), e.g. at pure strategies.
double dgf_value_closure(const Tree& tree, const DgfWeights& w, const Vec& x);

Vec dgf_gradient(const Tree& tree, const DgfWeights& w, const Vec& z);
void dgf_gradient(const Tree& tree, const DgfWeights& w, const Vec& z, Vec& out);

// argmax over the interior of the strategy polytope of z.x - phi(x).
Vec arg_conjugate(const Tree& tree, const DgfWeights& w, const Vec& z);
// Same, overwriting z with the accumulated local values.
void arg_conjugate_inplace(const Tree& tree, const DgfWeights& w, Vec& z, Vec& out);

// Dense matrices, meant for small trees.
Eigen::MatrixXd hessian(const Tree& tree, const DgfWeights& w, const Vec& z);
Eigen::MatrixXd inverse_hessian(const Tree& tree, const DgfWeights& w, const Vec& x);

double local_dual_norm_sq(const Tree& tree, const DgfWeights& w, const Vec& x, const Vec& z);
double local_dual_norm_sq(const Tree& tree, const DgfWeights& w, const Vec& x, const Vec& z,
                          Vec& scratch);
double local_primal_norm_sq(const Tree& tree, const DgfWeights& w, const Vec& x, const Vec& z);

}  // namespace tb
