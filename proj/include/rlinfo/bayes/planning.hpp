#pragma once

#include <vector>

#include "rlinfo/bayes/posteriors.hpp"
#include "rlinfo/env.hpp"
#include "rlinfo/envs/chains.hpp"

namespace rlinfo {

// Finite-horizon MDP with a phase embedded in the state id. Rows must be
// stochastic; outcomes at the final phase carry the terminal reward.
struct PhaseMdp {
  struct Outcome {
    double probability = 1.0;
    int next_state = 0;
    double reward = 0.0;
  };

  int num_states = 0;
  int num_actions = 0;
  int tau = 0;
  std::vector<int> phase;                                  // phase per state
  std::vector<std::vector<std::vector<Outcome>>> outcomes; // [state][action]

  void validate() const;
};

// Exact backward induction; Q at phase tau-1 equals the terminal reward.
QTable bellman_plan(const PhaseMdp& mdp);

// Q_pi for a stochastic policy given as per-state action probabilities.
QTable policy_q(const PhaseMdp& mdp, const std::vector<std::vector<double>>& policy);

// Greedy policy of a Q-table, lowest index on ties.
std::vector<ActionId> greedy_policy(const QTable& table);

// Beta posterior over the up-transition probability of every ring
// (state, action) pair, uniform prior.
struct RingPosterior {
  BetaPosterior up;  // indexed state * 2 + action

  static RingPosterior uniform_prior(const RingMdp& env) {
    return {BetaPosterior::uniform_prior(env.num_states() * env.num_actions())};
  }
};

// Posterior-sampling plan: draw one transition model from the posterior,
// solve it exactly, return the greedy policy (lowest-index ties).
std::vector<ActionId> psrl_episode_plan(const RingPosterior& post, const RingMdp& env,
                                        RandomSource& rng);

// The sampled-model MDP used by psrl_episode_plan, exposed for tests.
PhaseMdp ring_model(const RingMdp& env, const std::vector<double>& up_probabilities);

}  // namespace rlinfo
