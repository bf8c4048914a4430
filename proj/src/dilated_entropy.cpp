#include "treebandit/dilated_entropy.hpp"

#include <algorithm>
#include <cmath>

namespace tb {

namespace {

void check_len(const Tree& tree, const Vec& v, const char* what) {
  if (static_cast<int>(v.size()) != tree.num_sequences())
    throw std::invalid_argument(std::string(what) + ": vector length does not match the tree");
}

void check_positive(const Vec& v, const char* what) {
  for (double e : v)
    if (!(e > 0)) throw std::domain_error(std::string(what) + ": entries must be positive");
}

double parent_of(const Tree& tree, const Vec& z, int j) {
  int p = tree.parent_seq(j);
  return p < 0 ? 1.0 : z[p];
}

}  // namespace

DgfWeights compute_weights(const Tree& tree) {
  DgfWeights w;
  w.decision.assign(tree.num_decisions(), 0.0);
  w.after.assign(tree.num_sequences(), 0.0);
  for (int j = tree.num_decisions() - 1; j >= 0; --j) {
    double best = 0;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      double wk = 0;
      for (int c : tree.children(s)) wk += w.decision[c];
      w.after[s] = wk;
      best = std::max(best, wk);
    }
    w.decision[j] = 2.0 + 2.0 * best;
  }
  return w;
}

double dgf_value(const Tree& tree, const DgfWeights& w, const Vec& x) {
  check_len(tree, x, "dgf_value");
  check_positive(x, "dgf_value");
  double total = 0;
  for (int j = 0; j < tree.num_decisions(); ++j) {
    double xp = parent_of(tree, x, j);
    double local = xp * std::log(static_cast<double>(tree.num_actions(j)));
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) local += x[s] * std::log(x[s] / xp);
    total += w.decision[j] * local;
  }
  return total;
}

double dgf_value_closure(const Tree& tree, const DgfWeights& w, const Vec& x) {
  check_len(tree, x, "dgf_value_closure");
  double total = 0;
  for (int j = 0; j < tree.num_decisions(); ++j) {
    double xp = parent_of(tree, x, j);
    if (xp < 0) throw std::domain_error("dgf_value_closure: negative entry");
    if (xp == 0) continue;
    double local = xp * std::log(static_cast<double>(tree.num_actions(j)));
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      if (x[s] < 0) throw std::domain_error("dgf_value_closure: negative entry");
      if (x[s] > 0) local += x[s] * std::log(x[s] / xp);
    }
    total += w.decision[j] * local;
  }
  return total;
}

void dgf_gradient(const Tree& tree, const DgfWeights& w, const Vec& z, Vec& g) {
  g.assign(z.size(), 0.0);
  for (int j = tree.num_decisions() - 1; j >= 0; --j) {
    const double wj = w.decision[j];
    const int p = tree.parent_seq(j);
    const double zp = p < 0 ? 1.0 : z[p];
    double mass = 0;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      g[s] += wj * (1.0 + std::log(z[s] / zp));
      mass += z[s];
    }
    if (p >= 0) g[p] += wj * (std::log(static_cast<double>(tree.num_actions(j))) - mass / zp);
  }
}

Vec dgf_gradient(const Tree& tree, const DgfWeights& w, const Vec& z) {
  check_len(tree, z, "dgf_gradient");
  check_positive(z, "dgf_gradient");
  Vec g;
  dgf_gradient(tree, w, z, g);
  return g;
}

void arg_conjugate_inplace(const Tree& tree, const DgfWeights& w, Vec& z, Vec& x) {
  x.resize(z.size());
  for (int j = tree.num_decisions() - 1; j >= 0; --j) {
    const double wj = w.decision[j];
    const int b = tree.seq_begin(j), e = tree.seq_end(j);
    double m = -INFINITY;
    for (int s = b; s < e; ++s) m = std::max(m, z[s] / wj);
    double sum = 0;
    for (int s = b; s < e; ++s) {
      x[s] = std::exp(z[s] / wj - m);
      sum += x[s];
    }
    for (int s = b; s < e; ++s) x[s] /= sum;
    const int p = tree.parent_seq(j);
    // max of z.q - w (log n + sum q log q) over the local simplex
    if (p >= 0) z[p] += wj * (m + std::log(sum) - std::log(static_cast<double>(e - b)));
  }
  for (int j = 0; j < tree.num_decisions(); ++j) {
    const int p = tree.parent_seq(j);
    if (p < 0) continue;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) x[s] *= x[p];
  }
}

Vec arg_conjugate(const Tree& tree, const DgfWeights& w, const Vec& z) {
  check_len(tree, z, "arg_conjugate");
  Vec work = z, x;
  arg_conjugate_inplace(tree, w, work, x);
  return x;
}

Eigen::MatrixXd hessian(const Tree& tree, const DgfWeights& w, const Vec& z) {
  check_len(tree, z, "hessian");
  check_positive(z, "hessian");
  const int n = tree.num_sequences();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < tree.num_decisions(); ++j) {
    const double wj = w.decision[j];
    const int p = tree.parent_seq(j);
    double mass = 0;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      h(s, s) += wj / z[s];
      mass += z[s];
      if (p >= 0) {
        h(s, p) -= wj / z[p];
        h(p, s) -= wj / z[p];
      }
    }
    if (p >= 0) h(p, p) += wj * mass / (z[p] * z[p]);
  }
  return h;
}

Eigen::MatrixXd inverse_hessian(const Tree& tree, const DgfWeights& w, const Vec& x) {
  check_len(tree, x, "inverse_hessian");
  check_positive(x, "inverse_hessian");
  const int n = tree.num_sequences();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd v(n);
  for (int s = 0; s < n; ++s) {
    v.setZero();
    v(s) = x[s];
    for (int t = tree.desc_begin(s); t < tree.desc_end(s); ++t) v(t) = x[t];
    m += v * v.transpose() / (w.decision[tree.owner(s)] * x[s]);
  }
  return m;
}

double local_dual_norm_sq(const Tree& tree, const DgfWeights& w, const Vec& x, const Vec& z,
                          Vec& sub) {
  const int n = tree.num_sequences();
  sub.resize(n);
  for (int s = 0; s < n; ++s) sub[s] = z[s] * x[s];
  double total = 0;
  for (int j = tree.num_decisions() - 1; j >= 0; --j) {
    const double wj = w.decision[j];
    const int p = tree.parent_seq(j);
    double up = 0;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      total += sub[s] * sub[s] / (wj * x[s]);
      up += sub[s];
    }
    if (p >= 0) sub[p] += up;
  }
  return total;
}

double local_dual_norm_sq(const Tree& tree, const DgfWeights& w, const Vec& x, const Vec& z) {
  check_len(tree, x, "local_dual_norm_sq");
  check_len(tree, z, "local_dual_norm_sq");
  check_positive(x, "local_dual_norm_sq");
  Vec sub;
  return local_dual_norm_sq(tree, w, x, z, sub);
}

double local_primal_norm_sq(const Tree& tree, const DgfWeights& w, const Vec& x, const Vec& z) {
  check_len(tree, x, "local_primal_norm_sq");
  check_len(tree, z, "local_primal_norm_sq");
  check_positive(x, "local_primal_norm_sq");
  double total = 0;
  for (int j = 0; j < tree.num_decisions(); ++j) {
    const double wj = w.decision[j];
    const int p = tree.parent_seq(j);
    double mass = 0;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      total += wj * z[s] * z[s] / x[s];
      mass += x[s];
      if (p >= 0) total -= 2.0 * wj * z[s] * z[p] / x[p];
    }
    if (p >= 0) total += wj * mass * z[p] * z[p] / (x[p] * x[p]);
  }
  return total;
}

}  // namespace tb
