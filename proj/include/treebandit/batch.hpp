#pragma once

#include <cstdint>

#include "treebandit/dilated_entropy.hpp"

namespace tb {

// Serial is the reference; Parallel uses OpenMP when built with it. Both give
// bit-identical results: work is split into fixed chunks whose partial sums
// are combined in chunk order.
enum class Exec { Serial, Parallel };

int max_threads();

// Exact moments of the loss estimate over all pure strategies of a small tree,
// for the loss vector `loss` (feedback l = loss.y).
struct ExactMoments {
  Vec mean_estimate;     // E[estimate]
  Vec mean_pure;         // sum_y P(y) y
  double mean_norm = 0;  // E[ ||estimate||^2_{*,x} ]
  double total_probability = 0;
};
ExactMoments exact_estimator_moments(const Tree& tree, const DgfWeights& w, const Vec& x,
                                     const Vec& loss, Exec exec);

// Monte Carlo version with n samples. Chunk c draws from Rng(derive_seed(seed, c)).
struct SampledMoments {
  long samples = 0;
  Vec mean_pure;
  Vec mean_estimate;
  double mean_norm = 0, var_norm = 0;  // sample mean and variance of the squared dual norm
};
SampledMoments sampled_estimator_moments(const Tree& tree, const DgfWeights& w, const Vec& x,
                                         const Vec& loss, long n, std::uint64_t seed, Exec exec);

inline constexpr long kSampleChunk = 4096;

}  // namespace tb
