#pragma once

#include <memory>

#include "rlinfo/agent.hpp"
#include "rlinfo/enn/training.hpp"
#include "rlinfo/envs/bandits.hpp"
#include "rlinfo/ids/planners.hpp"

namespace rlinfo {

struct EnnAgentConfig {
  int ensemble_size = 20;
  std::vector<int> hidden = {50, 50};
  double prior_scale = 1.0;
  double learning_rate = 1e-3;
  bool plain_sgd = false;
  double gamma = 0.99;
  int n_batch = 128;
  int n_index = 20;
  int replay_capacity = 10000;
  int min_replay = -1;  // -1: equal to n_batch
  int sgd_steps = 1;    // gradient steps per environment step
  double index_mask_probability = 1.0;
  PlannerConfig planner;
};

// DQN-style agent: ensemble-with-prior value network over one-hot states,
// FIFO replay, Q-learning epistemic update, planner-driven action choice.
class EnnQAgent : public Agent {
 public:
  EnnQAgent(int num_states, int num_actions, int initial_state, EnnAgentConfig config,
            RandomSource init_rng);

  ActionId act(const AgentState& state, RandomSource& rng) override;
  AgentState reset(RandomSource& rng) override;

  struct Epistemic {
    EnsembleMlp net;
    ReplayBuffer buffer;
    OptimizerState optimizer;
  };

  static const Epistemic& epistemic(const AgentState& state) {
    return *std::any_cast<const std::shared_ptr<Epistemic>&>(state.epistemic);
  }
  const EnnAgentConfig& config() const { return config_; }

 protected:
  std::any update_algorithmic(const AgentState& s, const Transition& tr,
                              RandomSource& rng) override;
  std::any update_aleatoric(const AgentState&, const Transition& tr, RandomSource&) override;
  std::any update_epistemic(const AgentState& s, const Transition& tr, RandomSource& rng) override;

 private:
  int num_states_;
  int num_actions_;
  int initial_state_;
  EnnAgentConfig config_;
  RandomSource init_rng_;
};

// Variance-IDS agent for the K-component logistic bandit: the network maps
// a constant input to a parameter-space estimate; training uses the
// logistic observation loss over the first k components.
class LogisticIdsAgent : public Agent {
 public:
  LogisticIdsAgent(const LogisticGvfBandit* env, int k_components, EnnAgentConfig config,
                   RandomSource init_rng);

  ActionId act(const AgentState& state, RandomSource& rng) override;
  AgentState reset(RandomSource& rng) override;

  using Epistemic = EnnQAgent::Epistemic;
  static const Epistemic& epistemic(const AgentState& state) {
    return *std::any_cast<const std::shared_ptr<Epistemic>&>(state.epistemic);
  }

  // Expected-reward estimate per action under index z.
  std::vector<double> action_values(const Epistemic& ep, int z) const;

 protected:
  std::any update_algorithmic(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_aleatoric(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_epistemic(const AgentState& s, const Transition& tr, RandomSource& rng) override;

 private:
  const LogisticGvfBandit* env_;
  int k_;
  EnnAgentConfig config_;
  RandomSource init_rng_;
  std::vector<std::vector<std::vector<double>>> columns_;  // per action, k x d
};

}  // namespace rlinfo
