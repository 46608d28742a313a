#pragma once

#include <vector>

#include "rlinfo/env.hpp"

namespace rlinfo {

// Deterministic episodic chain with known exit rewards r_0..r_{tau-2} and a
// hidden terminal reward r_{tau-1} in {0,1} drawn with probability 1/2 at
// construction. States 0..tau-1 are the top row; exiting at s (action 0)
// drops to the zero-reward bottom row s+tau, which runs out to renewal.
// Leaving state tau-1 pays r_{tau-1} and renews, emitting the observation
// that resolves the hidden bit.
class RewardChain : public Environment {
 public:
  RewardChain(int tau, std::vector<double> exit_rewards, int terminal_reward);
  RewardChain(int tau, std::vector<double> exit_rewards, std::uint64_t seed);

  int num_actions() const override { return 2; }
  int num_states() const override { return 2 * tau_ - 1; }
  StepResult step(int state, ActionId action, RandomSource&) const override;
  std::vector<Branch> branches(int state, ActionId action) const override;
  double optimal_value() const override;

  int episode_length() const override { return tau_; }
  int tau() const { return tau_; }
  // Known exit rewards, exposed as optional prior metadata for agents.
  const std::vector<double>& exit_rewards() const { return exits_; }
  // Diagnostics only: the hidden bit behind the optimal-value oracle.
  int hidden_terminal_reward() const { return terminal_reward_; }

  // Observation token for the renewal observation (0, r).
  int renewal_token(int r) const { return 2 * tau_ - 1 + r; }

 private:
  int tau_;
  std::vector<double> exits_;
  int terminal_reward_;
};

// Chain variant with exactly one rewarding exit among r_0..r_{tau-2} and a
// final state that is never rewarding; entering the final state emits an
// observation revealing the rewarding index.
class InformativeChain : public Environment {
 public:
  InformativeChain(int tau, int rewarding_index);
  InformativeChain(int tau, std::uint64_t seed);

  int num_actions() const override { return 2; }
  int num_states() const override { return 2 * tau_ - 1; }
  StepResult step(int state, ActionId action, RandomSource&) const override;
  std::vector<Branch> branches(int state, ActionId action) const override;
  double optimal_value() const override { return 1.0; }

  int episode_length() const override { return tau_; }
  int tau() const { return tau_; }
  int rewarding_index() const { return rewarding_index_; }
  int reveal_token(int index) const { return 2 * tau_ - 1 + index; }

 private:
  int tau_;
  int rewarding_index_;
};

// N x N grid; the agent starts top-left and descends one row per step.
// Actions are left/right XOR a per-cell seed-derived flip mask; rightward
// moves cost 0.01/N and the bottom-right treasure pays 1.
class DeepSea : public Environment {
 public:
  DeepSea(int size, std::uint64_t seed);

  int num_actions() const override { return 2; }
  int num_states() const override { return size_ * size_; }
  StepResult step(int state, ActionId action, RandomSource&) const override;
  std::vector<Branch> branches(int state, ActionId action) const override;
  double optimal_value() const override { return 1.0 - 0.01; }

  int episode_length() const override { return size_; }
  int size() const { return size_; }
  double move_cost() const { return 0.01 / size_; }
  bool flipped(int row, int col) const {
    return mask_[static_cast<std::size_t>(row * size_ + col)];
  }

 private:
  int size_;
  std::vector<bool> mask_;
};

// M locations x tau phases; from any non-final phase only location +-1
// (mod M) is reachable, with seed-realized up-probabilities and known
// seed-realized rewards. The final phase renews to location 0.
class RingMdp : public Environment {
 public:
  RingMdp(int num_locations, int tau, std::uint64_t seed);

  int num_actions() const override { return 2; }
  int num_states() const override { return locations_ * tau_; }
  StepResult step(int state, ActionId action, RandomSource& rng) const override;
  std::vector<Branch> branches(int state, ActionId action) const override;
  double optimal_value() const override;

  int episode_length() const override { return tau_; }
  int locations() const { return locations_; }
  int tau() const { return tau_; }
  int state_id(int location, int phase) const { return phase * locations_ + location; }
  int location_of(int state) const { return state % locations_; }
  int phase_of(int state) const { return state / locations_; }
  int neighbor(int state, bool up) const;

  double up_probability(int state, ActionId action) const {
    return up_prob_[static_cast<std::size_t>(state * 2 + action)];
  }
  // Known reward of landing in next_state from (state, action).
  double reward(int state, ActionId action, int next_state) const;

 private:
  int locations_;
  int tau_;
  std::vector<double> up_prob_;
  std::vector<double> reward_up_;
  std::vector<double> reward_down_;
};

}  // namespace rlinfo
