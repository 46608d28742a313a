#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rlinfo/random.hpp"
#include "rlinfo/types.hpp"

namespace rlinfo {

// Independent Beta(alpha, beta) posterior per arm.
struct BetaPosterior {
  std::vector<double> alpha;
  std::vector<double> beta;

  static BetaPosterior uniform_prior(int arms) {
    return {std::vector<double>(arms, 1.0), std::vector<double>(arms, 1.0)};
  }
  int num_arms() const { return static_cast<int>(alpha.size()); }
  double mean(int arm) const { return alpha[arm] / (alpha[arm] + beta[arm]); }

  // Flat text record (arm, alpha, beta) per line, for checkpointing.
  std::string serialize() const;
  static BetaPosterior deserialize(const std::string& text);
};

// Conjugate counting update on the observed arm only.
BetaPosterior beta_update(BetaPosterior post, ActionId arm, int outcome);

// Mutual information (nats) between a Beta(alpha,beta) mean and one
// Bernoulli draw, in closed form via the digamma function.
double beta_bernoulli_mi(double alpha, double beta);

// Symmetric positive-definite Gaussian posterior over a linear parameter.
struct GaussianLinearPosterior {
  std::vector<double> mean;  // d
  std::vector<double> cov;   // d x d row-major, symmetric PD
  double noise_variance = 1.0;

  static GaussianLinearPosterior isotropic_prior(int dim, double prior_variance,
                                                 double noise_variance);
  int dim() const { return static_cast<int>(mean.size()); }
  double cov_at(int i, int j) const { return cov[static_cast<std::size_t>(i) * mean.size() + j]; }

  // Draw one parameter vector (Cholesky of the covariance).
  std::vector<double> sample(RandomSource& rng) const;
};

// Exact Gaussian conditioning on reward = action^T theta + noise, in
// information form with symmetric re-projection. Throws
// NumericalDegeneracy if the updated covariance loses positive
// definiteness.
GaussianLinearPosterior kalman_update(const GaussianLinearPosterior& post,
                                      const std::vector<double>& action, double reward);

// Probability vector over a finite hypothesis set.
struct DiscreteBelief {
  std::vector<double> probabilities;

  static DiscreteBelief uniform(int n) {
    return {std::vector<double>(n, 1.0 / n)};
  }
  void validate() const;
  int sample(RandomSource& rng) const;
};

// Thompson selection: argmax of one posterior draw, lowest index on ties.
ActionId thompson_select(const BetaPosterior& post, RandomSource& rng);
ActionId thompson_select(const GaussianLinearPosterior& post,
                         const std::vector<std::vector<double>>& action_set, RandomSource& rng);
ActionId thompson_select(const DiscreteBelief& belief,
                         const std::function<ActionId(int)>& optimal_action_of_hypothesis,
                         RandomSource& rng);

// First arm whose sampled mean is within eps of the sampled maximum.
ActionId satisficing_ts_select(const BetaPosterior& post, double eps, RandomSource& rng);

}  // namespace rlinfo
