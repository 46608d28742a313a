#pragma once

#include <cmath>
#include <vector>

#include "rlinfo/env.hpp"

namespace rlinfo {

// Bernoulli reward per arm; no delayed consequences, episode = one step.
class BernoulliBandit : public Environment {
 public:
  explicit BernoulliBandit(std::vector<double> heads_probabilities);

  int num_actions() const override { return static_cast<int>(p_.size()); }
  int num_states() const override { return 1; }
  bool is_bandit() const override { return true; }
  StepResult step(int state, ActionId action, RandomSource& rng) const override;
  std::vector<Branch> branches(int state, ActionId action) const override;
  double optimal_value() const override;

  double arm_mean(int a) const { return p_[a]; }

 private:
  std::vector<double> p_;
};

// Many arms with mean rewards drawn i.i.d. uniform from a seeded prior;
// observations are Bernoulli with the arm's mean.
class ManyArmedBandit : public BernoulliBandit {
 public:
  ManyArmedBandit(int num_arms, std::uint64_t seed);
};

// R_{t+1} = O_{t+1} = theta^T a + N(0, sigma^2). Finite unit-vector action
// set; observations are continuous so q_star is computed directly.
class LinearGaussianBandit : public Environment {
 public:
  LinearGaussianBandit(std::vector<double> theta, double noise_std,
                       std::vector<std::vector<double>> action_set);

  // Canonical basis arms e_1..e_d.
  static LinearGaussianBandit canonical(std::vector<double> theta, double noise_std);

  int num_actions() const override { return static_cast<int>(actions_.size()); }
  int num_states() const override { return 1; }
  bool is_bandit() const override { return true; }
  StepResult step(int state, ActionId action, RandomSource& rng) const override;
  std::vector<Branch> branches(int state, ActionId action) const override;
  double optimal_value() const override;
  QTable q_star() const override;

  int dimension() const { return static_cast<int>(theta_.size()); }
  double noise_std() const { return noise_std_; }
  const std::vector<double>& action_vector(int a) const { return actions_[a]; }
  double mean_reward(int a) const;

 private:
  std::vector<double> theta_;
  double noise_std_;
  std::vector<std::vector<double>> actions_;
};

// One-sparse linear bandit with deterministic observations O = a^T phi_*.
// Actions: N one-hot arms followed by the dyadic bisection probes
// (indicator blocks of sizes N/2 .. 2, scaled by 1/2).
class SparseLinearBandit : public Environment {
 public:
  SparseLinearBandit(int num_arms, int rewarding_arm);
  SparseLinearBandit(int num_arms, std::uint64_t seed);

  int num_actions() const override { return static_cast<int>(actions_.size()); }
  int num_states() const override { return 1; }
  bool is_bandit() const override { return true; }
  StepResult step(int state, ActionId action, RandomSource& rng) const override;
  std::vector<Branch> branches(int state, ActionId action) const override;
  double optimal_value() const override { return 1.0; }
  QTable q_star() const override;

  int num_arms() const { return num_arms_; }
  int num_probes() const { return static_cast<int>(actions_.size()) - num_arms_; }
  int rewarding_arm() const { return rewarding_arm_; }
  const std::vector<double>& action_vector(int a) const { return actions_[a]; }
  // Arms i with action coefficient > 0 (the probe block, or the arm itself).
  std::vector<int> action_support(int a) const;

 private:
  void build_actions();

  int num_arms_;
  int rewarding_arm_;
  std::vector<std::vector<double>> actions_;
};

// K-component logistic bandit: each observation bit is independent with
// probability sigmoid(<a_i, phi_*>); component 0 is the reward.
class LogisticGvfBandit : public Environment {
 public:
  LogisticGvfBandit(int dimension, int num_components, int num_actions, std::uint64_t seed);

  int num_actions() const override { return static_cast<int>(actions_.size()); }
  int num_states() const override { return 1; }
  bool is_bandit() const override { return true; }
  StepResult step(int state, ActionId action, RandomSource& rng) const override;
  std::vector<Branch> branches(int state, ActionId action) const override;
  double optimal_value() const override;
  QTable q_star() const override;

  int dimension() const { return dim_; }
  int num_components() const { return num_components_; }
  // Column j of action a's matrix.
  const std::vector<double>& action_column(int a, int j) const { return actions_[a][j]; }
  double component_probability(int a, int j) const;

  static double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

 private:
  int dim_;
  int num_components_;
  std::vector<double> phi_;
  // actions_[a][j] is the d-vector for component j of action a.
  std::vector<std::vector<std::vector<double>>> actions_;
};

// N arms with exactly one rewarding, plus a revealing arm (index N) that
// pays nothing but exposes the rewarding index in the observation.
// Observations are (reward bit, reveal index or -1).
class InformativeBandit : public Environment {
 public:
  InformativeBandit(int num_arms, int rewarding_arm);
  InformativeBandit(int num_arms, std::uint64_t seed);

  int num_actions() const override { return num_arms_ + 1; }
  int num_states() const override { return 1; }
  bool is_bandit() const override { return true; }
  StepResult step(int state, ActionId action, RandomSource& rng) const override;
  std::vector<Branch> branches(int state, ActionId action) const override;
  double optimal_value() const override { return 1.0; }

  int num_arms() const { return num_arms_; }
  int revealing_arm() const { return num_arms_; }
  int rewarding_arm() const { return rewarding_arm_; }

 private:
  int num_arms_;
  int rewarding_arm_;
};

}  // namespace rlinfo
