#include "rlinfo/bayes/agents.hpp"

namespace rlinfo {

// ---------------------------------------------------------- BetaBanditAgent

ActionId BetaBanditAgent::act(const AgentState& state, RandomSource& rng) {
  const BetaPosterior& post = posterior(state);
  switch (planner_) {
    case Planner::thompson:
      return thompson_select(post, rng);
    case Planner::satisficing:
      return satisficing_ts_select(post, eps_, rng);
    case Planner::exact_ids:
      return exact_ids_bandit_select(post, rng, granularity_).action;
  }
  throw ContractViolation("BetaBanditAgent: unknown planner");
}

AgentState BetaBanditAgent::reset(RandomSource&) {
  AgentState state;
  state.epistemic = BetaPosterior::uniform_prior(num_arms_);
  return state;
}

std::any BetaBanditAgent::update_epistemic(const AgentState& s, const Transition& tr,
                                           RandomSource&) {
  const int outcome = tr.observation.is_token() ? tr.observation.token()
                                                : (tr.reward > 0.5 ? 1 : 0);
  return beta_update(posterior(s), tr.action, outcome);
}

// ------------------------------------------------------------- KalmanTsAgent

ActionId KalmanTsAgent::act(const AgentState& state, RandomSource& rng) {
  std::vector<std::vector<double>> actions;
  actions.reserve(static_cast<std::size_t>(env_->num_actions()));
  for (int a = 0; a < env_->num_actions(); ++a) actions.push_back(env_->action_vector(a));
  return thompson_select(posterior(state), actions, rng);
}

AgentState KalmanTsAgent::reset(RandomSource&) {
  AgentState state;
  state.epistemic = GaussianLinearPosterior::isotropic_prior(
      env_->dimension(), prior_variance_, env_->noise_std() * env_->noise_std());
  return state;
}

std::any KalmanTsAgent::update_epistemic(const AgentState& s, const Transition& tr,
                                         RandomSource&) {
  return kalman_update(posterior(s), env_->action_vector(tr.action), tr.reward);
}

// -------------------------------------------------------------- PsrlRingAgent

ActionId PsrlRingAgent::act(const AgentState& state, RandomSource&) {
  const auto& policy = std::any_cast<const std::vector<ActionId>&>(state.algorithmic);
  const int env_state = std::any_cast<int>(state.aleatoric);
  return policy[static_cast<std::size_t>(env_state)];
}

AgentState PsrlRingAgent::reset(RandomSource& rng) {
  AgentState state;
  state.epistemic = RingPosterior::uniform_prior(*env_);
  state.aleatoric = env_->initial_state();
  state.algorithmic = psrl_episode_plan(posterior(state), *env_, rng);
  return state;
}

std::any PsrlRingAgent::update_algorithmic(const AgentState& s, const Transition& tr,
                                           RandomSource& rng) {
  if (!tr.episode_terminal) return s.algorithmic;
  // Episode boundary: replan from the freshly updated posterior.
  RingPosterior post = posterior(s);
  if (env_->phase_of(tr.state_before) != env_->tau() - 1) {
    const std::size_t i = static_cast<std::size_t>(tr.state_before * 2 + tr.action);
    const int went_up = tr.state_after == env_->neighbor(tr.state_before, true) ? 1 : 0;
    post.up = beta_update(post.up, static_cast<int>(i), went_up);
  }
  return psrl_episode_plan(post, *env_, rng);
}

std::any PsrlRingAgent::update_aleatoric(const AgentState&, const Transition& tr,
                                         RandomSource&) {
  return tr.episode_terminal ? env_->initial_state() : tr.state_after;
}

std::any PsrlRingAgent::update_epistemic(const AgentState& s, const Transition& tr,
                                         RandomSource&) {
  RingPosterior post = posterior(s);
  // Final-phase renewals are deterministic and carry no transition
  // information.
  if (env_->phase_of(tr.state_before) == env_->tau() - 1) return post;
  const std::size_t i = static_cast<std::size_t>(tr.state_before * 2 + tr.action);
  const int went_up = tr.state_after == env_->neighbor(tr.state_before, true) ? 1 : 0;
  post.up = beta_update(post.up, static_cast<int>(i), went_up);
  return post;
}

}  // namespace rlinfo
