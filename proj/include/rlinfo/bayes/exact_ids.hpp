#pragma once

#include "rlinfo/bayes/posteriors.hpp"
#include "rlinfo/ids/two_sparse.hpp"

namespace rlinfo {

// Exact quantities for independent Beta arms, all by adaptive quadrature.
struct BetaBanditExact {
  std::vector<double> optimal_arm_probability;  // P(A* = a | posterior)
  double expected_best_mean = 0.0;              // E[max_a p_a]
  std::vector<double> shortfall;                // E[max p - p_a], clamped at 0
  std::vector<double> info_gain;                // I(A*; outcome of arm a), nats
};

BetaBanditExact beta_bandit_exact(const BetaPosterior& post);

// Exact-information IDS: minimizes squared expected shortfall over the
// exact mutual information between the optimal-arm identity and the
// (action, reward) observation, then samples from the minimizer.
struct ExactIdsDecision {
  TwoSparseDistribution nu;
  ActionId action = 0;
  BetaBanditExact exact;
};

ExactIdsDecision exact_ids_bandit_select(const BetaPosterior& post, RandomSource& rng,
                                         int granularity = 100);

}  // namespace rlinfo
