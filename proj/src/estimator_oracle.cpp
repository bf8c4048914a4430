#include "treebandit/estimator_oracle.hpp"

#include <stdexcept>

namespace tb {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void check(const Tree& tree, const Vec& x) {
  if (tree.num_sequences() > kOracleMaxSequences)
    throw std::length_error("estimator oracle: tree too large for dense matrices");
  if (static_cast<int>(x.size()) != tree.num_sequences())
    throw std::invalid_argument("estimator oracle: vector length does not match the tree");
}

struct Dense {
  const Tree& tree;
  const Vec& x;
  int n;

  double parent(int j) const {
    int p = tree.parent_seq(j);
    return p < 0 ? 1.0 : x[p];
  }

  // Strategy of the subtree of decision point j conditioned on reaching j.
  VectorXd cond_dp(int j) const {
    VectorXd v = VectorXd::Zero(n);
    const double xp = parent(j);
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      v(s) = x[s] / xp;
      for (int t = tree.desc_begin(s); t < tree.desc_end(s); ++t) v(t) = x[t] / xp;
    }
    return v;
  }

  // Strategy strictly below s conditioned on playing s.
  VectorXd cond_obs(int s) const {
    VectorXd v = VectorXd::Zero(n);
    for (int t = tree.desc_begin(s); t < tree.desc_end(s); ++t) v(t) = x[t] / x[s];
    return v;
  }

  MatrixXd corr_dp(int j) const {
    MatrixXd c = MatrixXd::Zero(n, n);
    const double xp = parent(j);
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      const double lam = x[s] / xp;
      c(s, s) = lam;
      if (tree.terminal(s)) continue;
      VectorXd below = cond_obs(s);
      c.row(s) += lam * below.transpose();
      c.col(s) += lam * below;
      c += lam * corr_obs(s);
    }
    return c;
  }

  MatrixXd corr_obs(int s) const {
    MatrixXd c = MatrixXd::Zero(n, n);
    const auto kids = tree.children(s);
    std::vector<VectorXd> xs;
    for (int k : kids) {
      c += corr_dp(k);
      xs.push_back(cond_dp(k));
    }
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t m = 0; m < xs.size(); ++m)
        if (i != m) c += xs[i] * xs[m].transpose();
    return c;
  }

  MatrixXd ginv_dp(int j) const {
    MatrixXd g = MatrixXd::Zero(n, n);
    const double xp = parent(j);
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      const double lam = x[s] / xp;
      if (tree.terminal(s))
        g(s, s) = 1.0 / lam;
      else
        g += ginv_obs(s) / lam;
    }
    return g;
  }

  VectorXd mu(int s) const {
    VectorXd m = VectorXd::Zero(n);
    for (int k : tree.children(s)) m += ginv_dp(k) * cond_dp(k);
    return m;
  }

  MatrixXd ginv_obs(int s) const {
    MatrixXd g = MatrixXd::Zero(n, n);
    for (int k : tree.children(s)) g += ginv_dp(k);
    const double cnt = static_cast<double>(tree.children(s).size());
    VectorXd m = mu(s);
    g -= (cnt - 1.0) / (cnt * cnt) * m * m.transpose();
    return g;
  }

  VectorXd b_dp(int j, const Vec& y) const {
    VectorXd b = VectorXd::Zero(n);
    const double xp = parent(j);
    const double nj = tree.subtree_count(j);
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      if (y[s] == 0.0) continue;
      const double lam = x[s] / xp;
      if (tree.terminal(s)) {
        b(s) = (nj - 1.0) / lam;
      } else {
        b(s) = (nj - tree.after_count(s)) / lam;
        b += b_obs(s, y) / lam;
      }
    }
    return b;
  }

  VectorXd b_obs(int s, const Vec& y) const {
    VectorXd b = VectorXd::Zero(n);
    for (int k : tree.children(s)) b += b_dp(k, y);
    const double cnt = static_cast<double>(tree.children(s).size());
    b += (cnt - 1.0) / cnt * mu(s);
    return b;
  }
};

}  // namespace

MatrixXd autocorrelation_structured(const Tree& tree, const Vec& x) {
  check(tree, x);
  return Dense{tree, x, tree.num_sequences()}.corr_dp(0);
}

MatrixXd autocorrelation_bruteforce(const Tree& tree, const Vec& x) {
  check(tree, x);
  const int n = tree.num_sequences();
  MatrixXd c = MatrixXd::Zero(n, n);
  for (const auto& y : enumerate_pure_strategies(tree)) {
    VectorXd v = Eigen::Map<const VectorXd>(y.data(), n);
    c += pure_strategy_probability(tree, x, y) * v * v.transpose();
  }
  return c;
}

MatrixXd generalized_inverse(const Tree& tree, const Vec& x) {
  check(tree, x);
  for (double v : x)
    if (!(v > 0)) throw std::domain_error("generalized_inverse: x must be interior");
  return Dense{tree, x, tree.num_sequences()}.ginv_dp(0);
}

VectorXd orthogonal_vector(const Tree& tree, const Vec& x, const Vec& y) {
  check(tree, x);
  return Dense{tree, x, tree.num_sequences()}.b_dp(0, y);
}

VectorXd observation_mu(const Tree& tree, const Vec& x, int s) {
  check(tree, x);
  return Dense{tree, x, tree.num_sequences()}.mu(s);
}

Vec oracle_loss_estimate(const Tree& tree, const Vec& x, const Vec& y, double l) {
  check(tree, x);
  const int n = tree.num_sequences();
  VectorXd yv = Eigen::Map<const VectorXd>(y.data(), n);
  VectorXd r = l * (generalized_inverse(tree, x) * yv) + orthogonal_vector(tree, x, y);
  return Vec(r.data(), r.data() + n);
}

}  // namespace tb
