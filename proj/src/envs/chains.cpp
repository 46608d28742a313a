#include "rlinfo/envs/chains.hpp"

#include <algorithm>

namespace rlinfo {

// -------------------------------------------------------------- RewardChain

RewardChain::RewardChain(int tau, std::vector<double> exit_rewards, int terminal_reward)
    : tau_(tau), exits_(std::move(exit_rewards)), terminal_reward_(terminal_reward) {
  if (tau_ < 2) throw ContractViolation("RewardChain: tau must be >= 2");
  if (static_cast<int>(exits_.size()) != tau_ - 1)
    throw ContractViolation("RewardChain: needs tau-1 exit rewards");
  for (double r : exits_)
    if (r < 0.0 || r >= 1.0) throw ContractViolation("RewardChain: exit rewards must lie in [0,1)");
  if (terminal_reward_ != 0 && terminal_reward_ != 1)
    throw ContractViolation("RewardChain: terminal reward must be 0 or 1");
}

RewardChain::RewardChain(int tau, std::vector<double> exit_rewards, std::uint64_t seed)
    : RewardChain(tau, std::move(exit_rewards), RandomSource(seed).bernoulli(0.5) ? 1 : 0) {}

std::vector<Branch> RewardChain::branches(int state, ActionId action) const {
  const int top_last = tau_ - 1;
  const int bottom_last = 2 * tau_ - 2;
  if (state < top_last) {
    if (action == 0) {
      // Exit: collect r_s, drop to the bottom row.
      return {{1.0, Observation(state + tau_), exits_[static_cast<std::size_t>(state)],
               state + tau_, false}};
    }
    return {{1.0, Observation(state + 1), 0.0, state + 1, false}};
  }
  if (state == top_last) {
    // Leaving tau-1 pays the hidden reward and renews, either action.
    return {{1.0, Observation(renewal_token(terminal_reward_)),
             static_cast<double>(terminal_reward_), 0, true}};
  }
  if (state < bottom_last) return {{1.0, Observation(state + 1), 0.0, state + 1, false}};
  return {{1.0, Observation(0), 0.0, 0, true}};
}

StepResult RewardChain::step(int state, ActionId action, RandomSource&) const {
  return branches(state, action)[0].to_step();
}

double RewardChain::optimal_value() const {
  double best = static_cast<double>(terminal_reward_);
  for (double r : exits_) best = std::max(best, r);
  return best;
}

// ------------------------------------------------------- InformativeChain

InformativeChain::InformativeChain(int tau, int rewarding_index)
    : tau_(tau), rewarding_index_(rewarding_index) {
  if (tau_ < 3) throw ContractViolation("InformativeChain: tau must be >= 3");
  if (rewarding_index_ < 0 || rewarding_index_ > tau_ - 2)
    throw ContractViolation("InformativeChain: rewarding index out of range");
}

InformativeChain::InformativeChain(int tau, std::uint64_t seed)
    : InformativeChain(tau, RandomSource(seed).uniform_int(tau - 1)) {}

std::vector<Branch> InformativeChain::branches(int state, ActionId action) const {
  const int top_last = tau_ - 1;
  const int bottom_last = 2 * tau_ - 2;
  if (state < top_last) {
    if (action == 0) {
      const double r = state == rewarding_index_ ? 1.0 : 0.0;
      return {{1.0, Observation(state + tau_), r, state + tau_, false}};
    }
    if (state + 1 == top_last) {
      // Entering the final state reveals the rewarding index.
      return {{1.0, Observation(reveal_token(rewarding_index_)), 0.0, top_last, false}};
    }
    return {{1.0, Observation(state + 1), 0.0, state + 1, false}};
  }
  if (state == top_last) return {{1.0, Observation(0), 0.0, 0, true}};
  if (state < bottom_last) return {{1.0, Observation(state + 1), 0.0, state + 1, false}};
  return {{1.0, Observation(0), 0.0, 0, true}};
}

StepResult InformativeChain::step(int state, ActionId action, RandomSource&) const {
  return branches(state, action)[0].to_step();
}

// ------------------------------------------------------------------ DeepSea

DeepSea::DeepSea(int size, std::uint64_t seed) : size_(size) {
  if (size_ < 2) throw ContractViolation("DeepSea: size must be >= 2");
  RandomSource rng(RandomSource(seed).split("deep_sea_mask"));
  mask_.resize(static_cast<std::size_t>(size_ * size_));
  for (std::size_t i = 0; i < mask_.size(); ++i) mask_[i] = rng.bernoulli(0.5);
}

std::vector<Branch> DeepSea::branches(int state, ActionId action) const {
  const int row = state / size_;
  const int col = state % size_;
  const bool right = (action == 1) != flipped(row, col);
  double reward = 0.0;
  int next_col = col;
  if (right) {
    reward -= move_cost();
    next_col = std::min(col + 1, size_ - 1);
    if (row == size_ - 1 && col == size_ - 1) reward += 1.0;
  } else {
    next_col = std::max(col - 1, 0);
  }
  const bool terminal = row == size_ - 1;
  const int next = terminal ? 0 : (row + 1) * size_ + next_col;
  return {{1.0, Observation(next), reward, next, terminal}};
}

StepResult DeepSea::step(int state, ActionId action, RandomSource&) const {
  return branches(state, action)[0].to_step();
}

// ------------------------------------------------------------------ RingMdp

RingMdp::RingMdp(int num_locations, int tau, std::uint64_t seed)
    : locations_(num_locations), tau_(tau) {
  if (locations_ < 2 || tau_ < 2) throw ContractViolation("RingMdp: needs M >= 2, tau >= 2");
  RandomSource rng(seed);
  const std::size_t n = static_cast<std::size_t>(num_states() * 2);
  up_prob_.resize(n);
  reward_up_.resize(n);
  reward_down_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    up_prob_[i] = rng.uniform();
    reward_up_[i] = rng.uniform();
    reward_down_[i] = rng.uniform();
  }
}

int RingMdp::neighbor(int state, bool up) const {
  const int loc = location_of(state);
  const int phase = phase_of(state);
  const int next_phase = (phase + 1) % tau_;
  const int next_loc = up ? (loc + 1) % locations_ : (loc - 1 + locations_) % locations_;
  return state_id(next_loc, next_phase);
}

double RingMdp::reward(int state, ActionId action, int next_state) const {
  const std::size_t i = static_cast<std::size_t>(state * 2 + action);
  if (phase_of(state) == tau_ - 1) return reward_up_[i];  // renewal reward r(s,a,S0)
  return next_state == neighbor(state, true) ? reward_up_[i] : reward_down_[i];
}

std::vector<Branch> RingMdp::branches(int state, ActionId action) const {
  const std::size_t i = static_cast<std::size_t>(state * 2 + action);
  if (phase_of(state) == tau_ - 1) {
    return {{1.0, Observation(state_id(0, 0)), reward_up_[i], state_id(0, 0), true}};
  }
  const int up_state = neighbor(state, true);
  const int down_state = neighbor(state, false);
  return {{up_prob_[i], Observation(up_state), reward_up_[i], up_state, false},
          {1.0 - up_prob_[i], Observation(down_state), reward_down_[i], down_state, false}};
}

StepResult RingMdp::step(int state, ActionId action, RandomSource& rng) const {
  const std::size_t i = static_cast<std::size_t>(state * 2 + action);
  if (phase_of(state) == tau_ - 1)
    return {Observation(state_id(0, 0)), reward_up_[i], state_id(0, 0), true};
  const bool up = rng.bernoulli(up_prob_[i]);
  const int next = neighbor(state, up);
  return {Observation(next), up ? reward_up_[i] : reward_down_[i], next, false};
}

double RingMdp::optimal_value() const {
  return q_star().value(state_id(0, 0));
}

}  // namespace rlinfo
