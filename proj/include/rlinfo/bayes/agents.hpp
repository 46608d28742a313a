#pragma once

#include "rlinfo/agent.hpp"
#include "rlinfo/bayes/exact_ids.hpp"
#include "rlinfo/bayes/planning.hpp"
#include "rlinfo/envs/bandits.hpp"

namespace rlinfo {

// Exact Beta-Bernoulli bandit agent; the planner picks between Thompson
// sampling, satisficing TS, and exact mutual-information IDS.
class BetaBanditAgent : public Agent {
 public:
  enum class Planner { thompson, satisficing, exact_ids };

  BetaBanditAgent(int num_arms, Planner planner, double satisficing_eps = 0.0,
                  int ids_granularity = 100)
      : num_arms_(num_arms),
        planner_(planner),
        eps_(satisficing_eps),
        granularity_(ids_granularity) {}

  ActionId act(const AgentState& state, RandomSource& rng) override;
  AgentState reset(RandomSource&) override;

  static const BetaPosterior& posterior(const AgentState& state) {
    return std::any_cast<const BetaPosterior&>(state.epistemic);
  }

 protected:
  std::any update_algorithmic(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_aleatoric(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_epistemic(const AgentState& s, const Transition& tr, RandomSource&) override;

 private:
  int num_arms_;
  Planner planner_;
  double eps_;
  int granularity_;
};

// Kalman-filter linear-Gaussian bandit agent with Thompson sampling.
class KalmanTsAgent : public Agent {
 public:
  KalmanTsAgent(const LinearGaussianBandit* env, double prior_variance)
      : env_(env), prior_variance_(prior_variance) {}

  ActionId act(const AgentState& state, RandomSource& rng) override;
  AgentState reset(RandomSource&) override;

  static const GaussianLinearPosterior& posterior(const AgentState& state) {
    return std::any_cast<const GaussianLinearPosterior&>(state.epistemic);
  }

 protected:
  std::any update_algorithmic(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_aleatoric(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_epistemic(const AgentState& s, const Transition& tr, RandomSource&) override;

 private:
  const LinearGaussianBandit* env_;
  double prior_variance_;
};

// Posterior-sampling agent for the ring MDP: replans from one sampled
// model at every episode boundary, transition counts in between.
class PsrlRingAgent : public Agent {
 public:
  explicit PsrlRingAgent(const RingMdp* env) : env_(env) {}

  ActionId act(const AgentState& state, RandomSource&) override;
  AgentState reset(RandomSource& rng) override;

  static const RingPosterior& posterior(const AgentState& state) {
    return std::any_cast<const RingPosterior&>(state.epistemic);
  }

 protected:
  std::any update_algorithmic(const AgentState& s, const Transition& tr,
                              RandomSource& rng) override;
  std::any update_aleatoric(const AgentState&, const Transition& tr, RandomSource&) override;
  std::any update_epistemic(const AgentState& s, const Transition& tr, RandomSource&) override;

 private:
  const RingMdp* env_;
};

// Uniform-random baseline.
class UniformRandomAgent : public Agent {
 public:
  explicit UniformRandomAgent(int num_actions) : num_actions_(num_actions) {}

  ActionId act(const AgentState&, RandomSource& rng) override {
    return rng.uniform_int(num_actions_);
  }
  AgentState reset(RandomSource&) override { return {}; }

 protected:
  std::any update_algorithmic(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_aleatoric(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }
  std::any update_epistemic(const AgentState&, const Transition&, RandomSource&) override {
    return {};
  }

 private:
  int num_actions_;
};

}  // namespace rlinfo
