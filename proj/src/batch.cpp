#include "treebandit/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>

#include "treebandit/estimator.hpp"
#include "treebandit/rng.hpp"
#include "treebandit/sampler.hpp"

namespace tb {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

struct Partial {
  Vec est, pure;
  double norm = 0, norm_sq = 0, prob = 0;
  void init(int n) {
    est.assign(n, 0.0);
    pure.assign(n, 0.0);
  }
};

// Runs body(c, partial) for c in [0, chunks) and returns the partials in chunk order.
template <class Body>
std::vector<Partial> for_chunks(long chunks, int n, Exec exec, Body body) {
  std::vector<Partial> parts(chunks);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < chunks; ++c) {
      parts[c].init(n);
      body(c, parts[c]);
    }
  } else {
    for (long c = 0; c < chunks; ++c) {
      parts[c].init(n);
      body(c, parts[c]);
    }
  }
  return parts;
}

}  // namespace

ExactMoments exact_estimator_moments(const Tree& tree, const DgfWeights& w, const Vec& x,
                                     const Vec& loss, Exec exec) {
  const auto pures = enumerate_pure_strategies(tree);
  const int n = tree.num_sequences();
  const long per = 64;
  const long chunks = (static_cast<long>(pures.size()) + per - 1) / per;
  auto parts = for_chunks(chunks, n, exec, [&](long c, Partial& part) {
    Vec est, alpha, scratch;
    const long end = std::min<long>(pures.size(), (c + 1) * per);
    for (long i = c * per; i < end; ++i) {
      const Vec& y = pures[i];
      const double p = pure_strategy_probability(tree, x, y);
      if (p == 0) continue;
      loss_estimate(tree, x, y, std::clamp(dot(loss, y), 0.0, 1.0), est, alpha);
      for (int s = 0; s < n; ++s) {
        part.est[s] += p * est[s];
        part.pure[s] += p * y[s];
      }
      part.norm += p * local_dual_norm_sq(tree, w, x, est, scratch);
      part.prob += p;
    }
  });
  ExactMoments m;
  m.mean_estimate.assign(n, 0.0);
  m.mean_pure.assign(n, 0.0);
  for (const auto& part : parts) {
    for (int s = 0; s < n; ++s) {
      m.mean_estimate[s] += part.est[s];
      m.mean_pure[s] += part.pure[s];
    }
    m.mean_norm += part.norm;
    m.total_probability += part.prob;
  }
  return m;
}

SampledMoments sampled_estimator_moments(const Tree& tree, const DgfWeights& w, const Vec& x,
                                         const Vec& loss, long n, std::uint64_t seed, Exec exec) {
  const int m = tree.num_sequences();
  const long chunks = (n + kSampleChunk - 1) / kSampleChunk;
  auto parts = for_chunks(chunks, m, exec, [&](long c, Partial& part) {
    Rng rng(derive_seed(seed, c));
    Vec y, est, alpha, scratch;
    const long end = std::min(n, (c + 1) * kSampleChunk);
    for (long i = c * kSampleChunk; i < end; ++i) {
      sample(tree, x, rng, y);
      loss_estimate(tree, x, y, std::clamp(dot(loss, y), 0.0, 1.0), est, alpha);
      for (int s = 0; s < m; ++s) {
        part.est[s] += est[s];
        part.pure[s] += y[s];
      }
      const double v = local_dual_norm_sq(tree, w, x, est, scratch);
      part.norm += v;
      part.norm_sq += v * v;
    }
  });
  SampledMoments r;
  r.samples = n;
  r.mean_estimate.assign(m, 0.0);
  r.mean_pure.assign(m, 0.0);
  double sum = 0, sum_sq = 0;
  for (const auto& part : parts) {
    for (int s = 0; s < m; ++s) {
      r.mean_estimate[s] += part.est[s];
      r.mean_pure[s] += part.pure[s];
    }
    sum += part.norm;
    sum_sq += part.norm_sq;
  }
  for (double& v : r.mean_estimate) v /= n;
  for (double& v : r.mean_pure) v /= n;
  r.mean_norm = sum / n;
  r.var_norm = n > 1 ? std::max(0.0, (sum_sq - sum * sum / n) / (n - 1)) : 0.0;
  return r;
}

}  // namespace tb
