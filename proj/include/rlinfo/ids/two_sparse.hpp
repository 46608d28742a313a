#pragma once

#include <vector>

#include "rlinfo/random.hpp"
#include "rlinfo/types.hpp"

namespace rlinfo {

// Action distribution with at most two support points.
struct TwoSparseDistribution {
  ActionId action_a = 0;
  ActionId action_b = 0;
  double probability_of_a = 1.0;

  ActionId sample(RandomSource& rng) const {
    return rng.uniform() < probability_of_a ? action_a : action_b;
  }
  double probability_of(ActionId a) const {
    double p = 0.0;
    if (a == action_a) p += probability_of_a;
    if (a == action_b) p += 1.0 - probability_of_a;
    return p;
  }
  int support_size() const {
    if (action_a == action_b) return 1;
    if (probability_of_a <= 0.0 || probability_of_a >= 1.0) return 1;
    return 2;
  }
};

// Per-action expected shortfall (clamped >= 0) and information gain.
struct ShortfallGainTable {
  std::vector<double> shortfall;
  std::vector<double> gain;

  int num_actions() const { return static_cast<int>(shortfall.size()); }
  void validate() const;
};

// (sum nu_a shortfall_a)^2 / (sum nu_a gain_a), with the conventions:
// 0/0 = 0 and positive/0 = +inf. `pessimism` is added to the squared
// numerator before dividing.
double ratio_objective(const std::vector<double>& nu, const ShortfallGainTable& table,
                       double pessimism = 0.0);

// Global minimizer of the ratio objective over the simplex, found by a
// pairwise probability grid at the given granularity followed by a convex
// refinement along the winning pair. Ties break toward lower action
// indices, then toward more probability on the lower-index action. When
// the whole table is zero the fallback is uniform over the min-shortfall
// actions, reported via the extra flag.
struct TwoSparseResult {
  TwoSparseDistribution nu;
  double objective = 0.0;
  bool degenerate_fallback = false;        // all-zero table
  std::vector<int> fallback_support;       // min-shortfall actions when degenerate
};

TwoSparseResult two_sparse_minimize(const ShortfallGainTable& table, int granularity = 100,
                                    double pessimism = 0.0);

}  // namespace rlinfo
