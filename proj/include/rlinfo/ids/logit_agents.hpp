#pragma once

#include <memory>

#include "rlinfo/agent.hpp"
#include "rlinfo/enn/logit_ensemble.hpp"
#include "rlinfo/envs/bandits.hpp"
#include "rlinfo/envs/chains.hpp"
#include "rlinfo/ids/planners.hpp"

namespace rlinfo {

struct LogitAgentConfig {
  int ensemble_size = 20;
  double init_std = 0.1;
  double learning_rate = 0.1;  // vanilla SGD
  int train_draws = 2000;       // evidence replays per environment step
  PlannerConfig planner;
};

// Shared epistemic state: candidate logits, the consistency masks of every
// past observation, and their running intersection.
struct LogitEpistemic {
  LogitEnsemble logits;
  std::vector<std::vector<char>> evidence;
  std::vector<char> consistent;  // intersection of all masks
};

// One-sparse linear bandit agent over an ensemble of candidate-arm logits.
// Member point estimates convert to action values through the known
// observation model (the probe pays 1/2 when it covers the true arm).
class SparseBanditLogitAgent : public Agent {
 public:
  SparseBanditLogitAgent(const SparseLinearBandit* env, LogitAgentConfig config,
                         RandomSource init_rng);

  ActionId act(const AgentState& state, RandomSource& rng) override;
  AgentState reset(RandomSource&) override;

  static const LogitEpistemic& epistemic(const AgentState& state) {
    return *std::any_cast<const std::shared_ptr<LogitEpistemic>&>(state.epistemic);
  }

 protected:
  std::any update_algorithmic(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_aleatoric(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_epistemic(const AgentState& s, const Transition& tr, RandomSource& rng) override;

 private:
  // One sampled model: member index drawn uniformly, candidate arm drawn
  // from that member's belief, values deterministic given the candidate.
  std::vector<double> sampled_values(const LogitEpistemic& ep, RandomSource& rng) const;

  const SparseLinearBandit* env_;
  LogitAgentConfig config_;
  RandomSource init_rng_;
};

// Informative bandit agent; the planner target distinguishes IDS_Q
// (scalar value variance, blind to the revealing arm) from IDS_GVF (full
// observation vector including the reveal channel).
class InformativeBanditLogitAgent : public Agent {
 public:
  InformativeBanditLogitAgent(const InformativeBandit* env, LogitAgentConfig config,
                              RandomSource init_rng);

  ActionId act(const AgentState& state, RandomSource& rng) override;
  AgentState reset(RandomSource&) override;

  static const LogitEpistemic& epistemic(const AgentState& state) {
    return *std::any_cast<const std::shared_ptr<LogitEpistemic>&>(state.epistemic);
  }

 protected:
  std::any update_algorithmic(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_aleatoric(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_epistemic(const AgentState& s, const Transition& tr, RandomSource& rng) override;

 private:
  const InformativeBandit* env_;
  LogitAgentConfig config_;
  RandomSource init_rng_;
};

// Informative chain agent: per-state variance-IDS (or per-episode TS) on
// member point estimates of the rewarding transition; the reveal channel
// appears in the GVF only on the transition that enters the final state.
class InformativeChainLogitAgent : public Agent {
 public:
  InformativeChainLogitAgent(const InformativeChain* env, LogitAgentConfig config,
                             RandomSource init_rng);

  ActionId act(const AgentState& state, RandomSource& rng) override;
  AgentState reset(RandomSource& rng) override;

  static const LogitEpistemic& epistemic(const AgentState& state) {
    return *std::any_cast<const std::shared_ptr<LogitEpistemic>&>(state.epistemic);
  }

 protected:
  std::any update_algorithmic(const AgentState& s, const Transition& tr,
                              RandomSource& rng) override;
  std::any update_aleatoric(const AgentState&, const Transition& tr, RandomSource&) override;
  std::any update_epistemic(const AgentState& s, const Transition& tr, RandomSource& rng) override;

 private:
  const InformativeChain* env_;
  LogitAgentConfig config_;
  RandomSource init_rng_;
};

}  // namespace rlinfo
