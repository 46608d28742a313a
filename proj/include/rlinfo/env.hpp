#pragma once

#include <memory>
#include <vector>

#include "rlinfo/random.hpp"
#include "rlinfo/types.hpp"

namespace rlinfo {

struct StepResult {
  Observation observation;
  double reward = 0.0;
  int next_state = 0;
  bool episode_terminal = false;
};

// One possible outcome of (state, action), for exact enumeration.
struct Branch {
  double probability = 1.0;
  Observation observation;
  double reward = 0.0;
  int next_state = 0;
  bool episode_terminal = false;

  StepResult to_step() const { return {observation, reward, next_state, episode_terminal}; }
};

// Q-values indexed [state][action] under the realized environment.
struct QTable {
  std::vector<std::vector<double>> q;

  double value(int state) const {
    double best = q[state][0];
    for (double x : q[state])
      if (x > best) best = x;
    return best;
  }
  ActionId greedy(int state) const {
    int best = 0;
    for (std::size_t a = 1; a < q[state].size(); ++a)
      if (q[state][a] > q[state][best]) best = static_cast<int>(a);
    return best;
  }
};

// Environment as a pure function of (state, action, rng). The internal
// state is an integer id; construction from a seed is pure, so instances
// are safe to move between threads.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual int num_actions() const = 0;
  virtual int num_states() const = 0;
  virtual int initial_state() const { return 0; }

  virtual StepResult step(int state, ActionId action, RandomSource& rng) const = 0;

  // Exact outcome distribution of (state, action); the default covers
  // finite-observation environments and drives the DP oracles. Continuous
  // observation environments override q_star() instead.
  virtual std::vector<Branch> branches(int state, ActionId action) const = 0;

  // Optimal per-step (bandits) or per-episode (episodic) expected return
  // under the realized parameters.
  virtual double optimal_value() const = 0;

  // True iff the env renews every step (bandit).
  virtual bool is_bandit() const { return false; }

  // Fixed episode length in steps; every environment here has one.
  virtual int episode_length() const { return 1; }

  // Exact optimal action values under the realized environment, by value
  // iteration over the finite branch structure.
  virtual QTable q_star() const;

  void check_action(ActionId a) const {
    if (a < 0 || a >= num_actions())
      throw ContractViolation("invalid action index " + std::to_string(a));
  }
};

// step_env: spec-level free-function form of Environment::step with the
// action precondition enforced.
inline StepResult step_env(const Environment& env, int state, ActionId action,
                           RandomSource& rng) {
  env.check_action(action);
  return env.step(state, action, rng);
}

// Shortfall V*(s) - Q*(s, a) of each executed action under the realized
// environment.
std::vector<double> per_step_shortfall(const Environment& env,
                                       const std::vector<Transition>& trace);

}  // namespace rlinfo
