#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rlinfo/env.hpp"
#include "rlinfo/info/measures.hpp"

namespace rlinfo {

// Per-step regret record for one run.
struct RegretTrace {
  std::string agent_id;
  std::string env_id;
  std::uint64_t seed = 0;
  std::vector<double> shortfall;           // V*(S_t) - Q*(S_t, A_t)
  std::vector<double> reward;
  std::vector<double> cumulative_regret;   // running sum of shortfalls
  std::vector<int> episode;                // episode index per step
  std::vector<double> episode_return;      // one entry per completed episode
  std::vector<bool> episode_optimal;       // return within 1e-9 of optimal

  std::string to_csv() const;
};

// Builds the regret record from a recorded trace using the environment's
// exact Q* oracle; episode optimality compares episode returns against
// optimal_value().
RegretTrace build_regret_trace(const Environment& env, const std::vector<Transition>& trace);

// First episode index at which the trailing suboptimal-episode fraction
// drops below `threshold`. The window is the trailing `window` episodes
// (the full prefix while fewer have completed). nullopt = not reached.
std::optional<int> learning_time(const std::vector<bool>& episode_optimal, double threshold,
                                 int window = 100);

inline std::optional<int> learning_time(const RegretTrace& trace, double threshold,
                                        int window = 100) {
  return learning_time(trace.episode_optimal, threshold, window);
}

// tau-information-ratio sequence from per-step expected shortfalls and
// per-step conditional information gains (already divided by tau, in the
// caller's chosen base). Follows the zero/zero convention; a negative gain
// marks the ratio undefined at that step.
struct InfoRatioEstimate {
  std::vector<double> ratio;
  std::vector<bool> defined;
  int tau = 1;
  std::vector<double> epsilon;  // optional baseline sequence, may be empty
};

InfoRatioEstimate info_ratio_sequence(const std::vector<double>& expected_shortfall,
                                      const std::vector<double>& gain_per_step, int tau,
                                      const std::vector<double>& epsilon = {});

// Diagnostics CSV, one row per step: t, shortfall, gain, ratio,
// cumulative_regret. Undefined ratios print as "nan".
std::string info_ratio_csv(const std::vector<double>& expected_shortfall,
                           const std::vector<double>& gain_per_step,
                           const InfoRatioEstimate& estimate);



// Monte Carlo estimate of the satisficing-target entropy curve for a
// many-armed bandit with i.i.d. uniform mean rewards. Shared random
// numbers across the epsilon grid. Entropies in nats.
struct SatisficingCurvePoint {
  double epsilon = 0.0;
  double target_entropy = 0.0;        // H(chi) estimate
  double optimal_entropy = 0.0;       // H(A*) estimate from the same draws
  double epsilon_optimal_prob = 0.0;  // p_hat: P(an arm is epsilon-optimal)
};

std::vector<SatisficingCurvePoint> satisficing_entropy_curve(int num_arms,
                                                             const std::vector<double>& eps_grid,
                                                             int monte_carlo_draws,
                                                             RandomSource& rng);

// Two-column CSV (epsilon, target entropy in nats).
std::string curve_csv(const std::vector<SatisficingCurvePoint>& curve);

}  // namespace rlinfo
