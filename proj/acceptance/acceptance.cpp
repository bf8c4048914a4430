// Acceptance checks: one PASS/FAIL line per criterion.
// Exit status is 0 iff the failing criteria are exactly those listed with
// --expect-fail (comma separated ids; none by default).

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "test_trees.hpp"
#include "treebandit/bandit.hpp"
#include "treebandit/batch.hpp"
#include "treebandit/equilibrium.hpp"
#include "treebandit/estimator.hpp"
#include "treebandit/estimator_oracle.hpp"
#include "treebandit/experiment.hpp"
#include "treebandit/omd.hpp"
#include "treebandit/sampler.hpp"

using namespace tb;
using namespace tbt;

namespace {

std::set<int> failed;

void report(int id, const char* name, bool ok, const std::string& detail, double seconds) {
  std::printf("%s  %2d  %-36s %s  (%.1fs)\n", ok ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) failed.insert(id);
}

std::set<int> parse_ids(const std::string& list) {
  std::set<int> ids;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) ids.insert(std::stoi(item));
  return ids;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void timed(int id, const char* name, const std::function<std::pair<bool, std::string>()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  auto [ok, detail] = body();
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, name, ok, detail, s);
}

Eigen::VectorXd as_eigen(const Vec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }

// Enumerable trees: the unit-test suite plus both Kuhn poker trees.
std::vector<Tree> enumerable_trees() {
  std::vector<Tree> trees = small_suite();
  Game k = kuhn_poker();
  trees.push_back(tfsdm_for_player(k, 0).tree);
  trees.push_back(tfsdm_for_player(k, 1).tree);
  return trees;
}

double max_abs(const Vec& a, const Vec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc)
      expected = parse_ids(argv[++i]);
    else if (arg.rfind("--expect-fail=", 0) == 0)
      expected = parse_ids(arg.substr(14));
    else {
      std::fprintf(stderr, "usage: acceptance [--expect-fail ID[,ID...]]\n");
      return 2;
    }
  }
  std::printf("acceptance checks, %d OpenMP threads\n", max_threads());
  const auto trees = enumerable_trees();
  std::mt19937_64 gen(20240601);

  timed(1, "oracle equivalence", [&] {
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    long cases = 0;
    for (const Tree& t : trees) {
      if (t.num_sequences() > 20) continue;
      auto pures = enumerate_pure_strategies(t);
      for (int rep = 0; rep < 50; ++rep) {
        Vec x = random_interior(t, gen);
        for (const auto& y : pures) {
          const double l = u(gen);
          worst = std::max(worst, max_abs(loss_estimate(t, x, y, l), oracle_loss_estimate(t, x, y, l)));
          ++cases;
        }
      }
    }
    return std::pair{worst < 1e-10, fmt("max |dev| %.3g over %ld (tree, x, y) cases", worst, cases)};
  });

  timed(2, "relaxed unbiasedness", [&] {
    double worst = 0;
    int n = 0;
    for (const Tree& t : trees) {
      if (count_pure_strategies(t) > 200) continue;
      auto w = compute_weights(t);
      auto pures = enumerate_pure_strategies(t);
      for (int rep = 0; rep < 5; ++rep) {
        Vec x = random_interior(t, gen);
        Vec loss = random_unit_loss(t, gen);
        ExactMoments m = exact_estimator_moments(t, w, x, loss, Exec::Parallel);
        for (const auto& a : pures)
          for (const auto& b : pures)
            worst = std::max(worst, std::abs((dot(m.mean_estimate, a) - dot(m.mean_estimate, b)) -
                                             (dot(loss, a) - dot(loss, b))));
      }
      ++n;
    }
    return std::pair{worst < 1e-9, fmt("max |dev| %.3g on %d trees", worst, n)};
  });

  timed(3, "expected dual norm bound", [&] {
    double worst_ratio = 0;
    for (const Tree& t : trees) {
      auto w = compute_weights(t);
      const double bound = 4 * std::pow(t.num_sequences(), 3);
      for (double scale : {0.0, 1.0, 3.0, 6.0}) {
        for (int rep = 0; rep < 5; ++rep) {
          Vec x = scale == 0 ? uniform_strategy(t) : random_interior(t, gen, scale);
          ExactMoments m = exact_estimator_moments(t, w, x, random_unit_loss(t, gen), Exec::Parallel);
          worst_ratio = std::max(worst_ratio, m.mean_norm / bound);
        }
      }
    }
    Game kuhn = kuhn_poker();
    Tree k = tfsdm_for_player(kuhn, 0).tree;
    auto w = compute_weights(k);
    const double bound = 4 * std::pow(k.num_sequences(), 3);
    double mc_worst = 0;
    bool mc_ok = true;
    for (int rep = 0; rep < 4; ++rep) {
      Vec x = rep == 0 ? uniform_strategy(k) : random_interior(k, gen, 2.0 * rep);
      const long n = 100000;
      SampledMoments s = sampled_estimator_moments(k, w, x, random_unit_loss(k, gen), n, gen(), Exec::Parallel);
      const double upper = s.mean_norm + 3 * std::sqrt(s.var_norm / n);
      mc_ok &= upper <= bound;
      mc_worst = std::max(mc_worst, upper / bound);
    }
    return std::pair{worst_ratio <= 1 && mc_ok,
                     fmt("exact max E/bound %.3g; Kuhn MC (mean+3se)/bound %.3g", worst_ratio, mc_worst)};
  });

  timed(4, "dgf calculus", [&] {
    double g_err = 0, h_err = 0, inv_err = 0, norm_err = 0;
    int points = 0, largest = 0;
    std::vector<Tree> pool{t1(), t2(), asym3()};
    while (pool.size() < 12) {
      Tree t = random_tree(gen, 64, 6);
      if (t.num_sequences() >= 20) pool.push_back(std::move(t));
    }
    for (const Tree& t : pool) {
      auto w = compute_weights(t);
      const int n = t.num_sequences();
      largest = std::max(largest, n);
      for (int rep = 0; rep < 20; ++rep, ++points) {
        Vec z = random_interior(t, gen, 1.5);
        Vec g = dgf_gradient(t, w, z);
        Eigen::MatrixXd h = hessian(t, w, z);
        for (int s = 0; s < n; ++s) {
          const double step = 1e-6 * z[s];
          Vec a = z, b = z;
          a[s] += step;
          b[s] -= step;
          const double fd = (dgf_value(t, w, a) - dgf_value(t, w, b)) / (2 * step);
          g_err = std::max(g_err, std::abs(fd - g[s]) / std::max(1.0, std::abs(g[s])));
          Vec ga = dgf_gradient(t, w, a), gb = dgf_gradient(t, w, b);
          for (int r = 0; r < n; ++r) {
            const double col = (ga[r] - gb[r]) / (2 * step);
            h_err = std::max(h_err, std::abs(col - h(r, s)) / std::max(1.0, std::abs(h(r, s))));
          }
        }
        Eigen::MatrixXd inv = inverse_hessian(t, w, z);
        inv_err = std::max(inv_err, (h * inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
        std::normal_distribution<double> nd;
        Vec v(n);
        for (double& e : v) e = nd(gen);
        const double quad = as_eigen(v).dot(inv * as_eigen(v));
        norm_err = std::max(norm_err, std::abs(local_dual_norm_sq(t, w, z, v) - quad) / std::max(1.0, quad));
      }
    }
    const bool ok = g_err < 1e-5 && h_err < 1e-4 && inv_err < 1e-8 && norm_err < 1e-9 && largest <= 64;
    return std::pair{ok, fmt("grad %.2g, hess %.2g, H*Hinv-I %.2g, dual norm %.2g; %d points, |S| up to %d",
                             g_err, h_err, inv_err, norm_err, points, largest)};
  });

  timed(5, "sampler unbiasedness", [&] {
    double exact = 0;
    for (const Tree& t : trees) {
      auto w = compute_weights(t);
      for (int rep = 0; rep < 5; ++rep) {
        Vec x = random_interior(t, gen);
        ExactMoments m = exact_estimator_moments(t, w, x, random_unit_loss(t, gen), Exec::Parallel);
        exact = std::max(exact, max_abs(m.mean_pure, x));
      }
    }
    Game kuhn = kuhn_poker();
    Tree k = tfsdm_for_player(kuhn, 0).tree;
    Vec x = random_interior(k, gen, 2.0);
    const long n = 100000;
    SampledMoments s = sampled_estimator_moments(k, compute_weights(k), x, random_unit_loss(k, gen), n, gen(),
                                                 Exec::Parallel);
    double worst_sigma = 0;
    for (int i = 0; i < k.num_sequences(); ++i) {
      const double sd = std::sqrt(x[i] * (1 - x[i]) / n);
      worst_sigma = std::max(worst_sigma, sd > 0 ? std::abs(s.mean_pure[i] - x[i]) / sd : 0.0);
    }
    return std::pair{exact < 1e-12 && worst_sigma <= 4,
                     fmt("exact max |dev| %.3g; Kuhn 1e5 samples max %.2f sigma", exact, worst_sigma)};
  });

  timed(6, "generalized inverse laws", [&] {
    double cgc = 0, zgx = 0, eb = 0;
    for (const Tree& t : trees) {
      auto pures = enumerate_pure_strategies(t);
      for (int rep = 0; rep < 10; ++rep) {
        Vec x = rep == 0 ? uniform_strategy(t) : random_interior(t, gen);
        Eigen::MatrixXd c = autocorrelation_structured(t, x);
        Eigen::MatrixXd g = generalized_inverse(t, x);
        cgc = std::max(cgc, (c * g * c - c).cwiseAbs().maxCoeff());
        Eigen::VectorXd gx = g * as_eigen(x);
        Eigen::VectorXd mean_b = Eigen::VectorXd::Zero(t.num_sequences());
        for (const auto& y : pures) {
          zgx = std::max(zgx, std::abs(as_eigen(y).dot(gx) - 1));
          mean_b += pure_strategy_probability(t, x, y) * orthogonal_vector(t, x, y);
        }
        for (const auto& z : pures)
          eb = std::max(eb, std::abs(mean_b.dot(as_eigen(z)) - (t.subtree_count(0) - 1)));
      }
    }
    return std::pair{cgc < 1e-8 && zgx < 1e-9 && eb < 1e-9,
                     fmt("CGC-C %.2g, z'Gx-1 %.2g, E[b]'z-(N-1) %.2g", cgc, zgx, eb)};
  });

  timed(7, "full-information regret bound", [&] {
    double worst = 0;  // max over cases of regret / bound
    int cases = 0;
    for (const Tree& t : {t1(), t2()}) {
      auto w = compute_weights(t);
      auto pures = enumerate_pure_strategies(t);
      const double root3d = std::sqrt(3.0 * t.max_depth());
      for (double eta : {0.01, 0.1, 1.0}) {
        for (int seq = 0; seq < 100; ++seq) {
          std::uniform_real_distribution<double> u(0, 1);
          Omd omd(t, eta);
          Vec cum(t.num_sequences(), 0.0);
          double incurred = 0, norms = 0;
          for (int step = 0; step < 1000; ++step) {
            Vec loss(t.num_sequences());
            for (double& v : loss) v = u(gen);
            const Vec& x = omd.next_strategy();
            incurred += dot(loss, x);
            norms += local_dual_norm_sq(t, w, x, loss);
            for (int s = 0; s < t.num_sequences(); ++s) cum[s] += loss[s];
            omd.observe_loss(loss);
          }
          for (const auto& z : pures) {
            const double regret = incurred - dot(cum, z);
            const double bound = dgf_value_closure(t, w, z) / eta + eta * root3d * norms;
            worst = std::max(worst, regret / bound);
            ++cases;
          }
        }
      }
    }
    return std::pair{worst <= 1.0, fmt("max regret/bound %.3f over %d (sequence, eta, comparator)", worst, cases)};
  });

  // Criteria 8 and 10 share the opponent.
  auto kuhn = std::make_shared<const Game>(kuhn_poker());
  EquilibriumResult eq = compute_equilibrium(*kuhn, 1000000);
  std::printf("      opponent: Kuhn self-play, 1e6 iterations, exploitability %.5f\n", eq.exploitability);
  Environment env(kuhn, 0, eq.strategy[1]);

  timed(8, "bandit regret bound and decay", [&] {
    const long horizon = 200000;
    const int runs = 100;
    const Tree& t = env.tree();
    auto w = compute_weights(t);
    const double phi = dgf_value_closure(t, w, linear_min_max(t, env.loss()).argmin);
    const double bound = 2 * (phi + std::sqrt(3.0 * t.max_depth())) * std::pow(t.num_sequences(), 1.5) *
                         std::sqrt(double(horizon));
    auto stats = [&](double mult, double& mean_r, double& se_r, double& early, double& late) {
      RunOptions opt;
      opt.iters = horizon;
      opt.eta_mult = mult;
      opt.record = false;
      opt.checkpoints = {horizon / 10, horizon};
      auto traces = run_batch(env, opt, 8, runs, Exec::Parallel);
      double s = 0, sq = 0;
      early = late = 0;
      for (const auto& tr : traces) {
        s += tr.regret;
        sq += tr.regret * tr.regret;
        early += tr.checkpoint_regret[0] / runs;
        late += tr.checkpoint_regret[1] / runs;
      }
      mean_r = s / runs;
      se_r = std::sqrt(std::max(0.0, sq / runs - mean_r * mean_r) / (runs - 1));
    };
    double mean_r, se_r, early, late;
    stats(1.0, mean_r, se_r, early, late);
    const bool a = mean_r + 3 * se_r <= bound;
    const double ratio = late / early;
    const bool b = ratio <= 0.6;
    double m5, se5, early5, late5;
    stats(5.0, m5, se5, early5, late5);
    std::printf("      info: multiplier 5: avg regret %.4g at T/10, %.4g at T (ratio %.3f)\n", early5, late5,
                late5 / early5);
    return std::pair{a && b, fmt("(a) %s mean R_T %.1f + 3se %.1f vs bound %.4g; (b) %s avg regret %.4g at T/10, "
                                 "%.4g at T, ratio %.3f (need <= 0.6); eta %.3g",
                                 a ? "ok" : "FAIL", mean_r, 3 * se_r, bound, b ? "ok" : "FAIL", early, late, ratio,
                                 default_step_size(t.num_sequences(), horizon, 1.0))};
  });

  timed(9, "benchmark shapes", [&] {
    const int m = tfsdm_for_player(matrix_game(), 0).tree.num_sequences();
    const int k = tfsdm_for_player(kuhn_poker(), 0).tree.num_sequences();
    const int l = tfsdm_for_player(leduc_poker(), 0).tree.num_sequences();
    const int g = tfsdm_for_player(goofspiel(3), 0).tree.num_sequences();
    return std::pair{m == 3 && k == 13 && l == 337 && g == 262,
                     fmt("matrix %d, kuhn %d, leduc %d, goofspiel(3) %d", m, k, l, g)};
  });

  timed(10, "mccfr baseline", [&] {
    RunOptions opt;
    opt.algo = Algo::Mccfr;
    opt.iters = 100000;
    opt.record = false;
    const int runs = 32;
    double mean = 0, worst = 0;
    for (const auto& tr : run_batch(env, opt, 10, runs, Exec::Parallel)) {
      mean += tr.regret / opt.iters / runs;
      worst = std::max(worst, tr.regret / opt.iters);
    }
    return std::pair{mean < 0.05, fmt("mean avg regret at T=1e5 %.4g (worst run %.4g), %d runs", mean, worst, runs)};
  });

  auto list = [](const std::set<int>& ids) {
    std::string out;
    for (int id : ids) out += (out.empty() ? "" : ",") + std::to_string(id);
    return out.empty() ? std::string("none") : out;
  };
  std::printf("%zu of 10 criteria failed: %s; expected to fail: %s\n", failed.size(), list(failed).c_str(),
              list(expected).c_str());
  if (failed != expected) {
    std::printf("acceptance: failing set differs from the expected set\n");
    return 1;
  }
  return 0;
}
