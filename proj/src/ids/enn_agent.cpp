#include "rlinfo/ids/enn_agent.hpp"

namespace rlinfo {

namespace {

struct TsAlgoState {
  EpistemicIndex index;
};

}  // namespace

EnnQAgent::EnnQAgent(int num_states, int num_actions, int initial_state, EnnAgentConfig config,
                     RandomSource init_rng)
    : num_states_(num_states),
      num_actions_(num_actions),
      initial_state_(initial_state),
      config_(std::move(config)),
      init_rng_(init_rng) {
  config_.planner.validate();
  if (config_.min_replay < 0) config_.min_replay = config_.n_batch;
}

AgentState EnnQAgent::reset(RandomSource& rng) {
  std::vector<int> widths;
  widths.push_back(num_states_);
  for (int h : config_.hidden) widths.push_back(h);
  widths.push_back(num_actions_);
  RandomSource net_rng = init_rng_;  // copy: identical nets on every reset
  auto ep = std::make_shared<Epistemic>(
      Epistemic{EnsembleMlp(config_.ensemble_size, widths, config_.prior_scale, net_rng),
                ReplayBuffer(static_cast<std::size_t>(config_.replay_capacity),
                             static_cast<std::size_t>(config_.min_replay)),
                OptimizerState()});
  ep->optimizer = OptimizerState::adam(ep->net, config_.learning_rate);
  ep->optimizer.plain_sgd = config_.plain_sgd;
  AgentState state;
  state.epistemic = ep;
  state.aleatoric = initial_state_;
  state.algorithmic = TsAlgoState{EpistemicIndex::sample(config_.ensemble_size, rng)};
  return state;
}

ActionId EnnQAgent::act(const AgentState& state, RandomSource& rng) {
  const Epistemic& ep = epistemic(state);
  const int s = std::any_cast<int>(state.aleatoric);
  switch (config_.planner.kind) {
    case PlannerConfig::Kind::epsilon_greedy:
      return epsilon_greedy_select(ep.net, s, config_.planner.epsilon, rng);
    case PlannerConfig::Kind::thompson:
      return ts_select(ep.net, s, std::any_cast<const TsAlgoState&>(state.algorithmic).index,
                       /*episode_boundary=*/false, rng)
          .action;
    case PlannerConfig::Kind::ids:
      return ids_select(ep.net, s, config_.planner, rng).action;
  }
  throw ContractViolation("EnnQAgent: unknown planner kind");
}

std::any EnnQAgent::update_algorithmic(const AgentState& s, const Transition& tr,
                                       RandomSource& rng) {
  TsAlgoState algo = std::any_cast<TsAlgoState>(s.algorithmic);
  if (tr.episode_terminal) algo.index = EpistemicIndex::sample(config_.ensemble_size, rng);
  return algo;
}

std::any EnnQAgent::update_aleatoric(const AgentState&, const Transition& tr, RandomSource&) {
  return tr.episode_terminal ? initial_state_ : tr.state_after;
}

std::any EnnQAgent::update_epistemic(const AgentState& s, const Transition& tr,
                                     RandomSource& rng) {
  auto ep = std::any_cast<std::shared_ptr<Epistemic>>(s.epistemic);
  EnnTransition enn_tr;
  enn_tr.state = tr.state_before;
  enn_tr.action = tr.action;
  enn_tr.reward = tr.reward;
  enn_tr.next_state = tr.episode_terminal ? initial_state_ : tr.state_after;
  enn_tr.terminal = tr.episode_terminal;
  if (!tr.observation.is_token()) enn_tr.observation_bits = tr.observation.vec();
  ep->buffer.add(std::move(enn_tr));
  const LossSpec loss = QLearningLoss{config_.gamma};
  for (int i = 0; i < config_.sgd_steps; ++i)
    epistemic_sgd_step(ep->net, ep->optimizer, ep->buffer, loss, config_.n_batch,
                       config_.n_index, rng, config_.index_mask_probability);
  return ep;
}

// ------------------------------------------------------------ LogisticIds

LogisticIdsAgent::LogisticIdsAgent(const LogisticGvfBandit* env, int k_components,
                                   EnnAgentConfig config, RandomSource init_rng)
    : env_(env), k_(k_components), config_(std::move(config)), init_rng_(init_rng) {
  if (k_ < 1 || k_ > env_->num_components())
    throw ContractViolation("LogisticIdsAgent: k out of range");
  columns_.resize(static_cast<std::size_t>(env_->num_actions()));
  for (int a = 0; a < env_->num_actions(); ++a) {
    auto& mat = columns_[static_cast<std::size_t>(a)];
    mat.resize(static_cast<std::size_t>(env_->num_components()));
    for (int j = 0; j < env_->num_components(); ++j) mat[static_cast<std::size_t>(j)] = env_->action_column(a, j);
  }
}

AgentState LogisticIdsAgent::reset(RandomSource&) {
  const std::vector<int> widths{1, env_->dimension()};
  RandomSource net_rng = init_rng_;
  auto ep = std::make_shared<Epistemic>(
      Epistemic{EnsembleMlp(config_.ensemble_size, widths, config_.prior_scale, net_rng),
                ReplayBuffer(static_cast<std::size_t>(config_.replay_capacity),
                             static_cast<std::size_t>(std::max(1, config_.n_batch))),
                OptimizerState()});
  ep->optimizer = OptimizerState::adam(ep->net, config_.learning_rate);
  ep->optimizer.plain_sgd = config_.plain_sgd;
  AgentState state;
  state.epistemic = ep;
  return state;
}

std::vector<double> LogisticIdsAgent::action_values(const Epistemic& ep, int z) const {
  const std::vector<double> phi = ep.net.forward(std::vector<double>{1.0}, z);
  std::vector<double> values(static_cast<std::size_t>(env_->num_actions()));
  for (int a = 0; a < env_->num_actions(); ++a) {
    const std::vector<double>& col = columns_[static_cast<std::size_t>(a)][0];
    double logit = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) logit += col[i] * phi[i];
    values[static_cast<std::size_t>(a)] = LogisticGvfBandit::sigmoid(logit);
  }
  return values;
}

ActionId LogisticIdsAgent::act(const AgentState& state, RandomSource& rng) {
  const Epistemic& ep = epistemic(state);
  std::vector<std::vector<double>> samples;
  samples.reserve(static_cast<std::size_t>(config_.planner.n_ids));
  for (int i = 0; i < config_.planner.n_ids; ++i)
    samples.push_back(action_values(ep, rng.uniform_int(ep.net.num_members())));
  return ids_decide(samples, {}, config_.planner, rng).action;
}

std::any LogisticIdsAgent::update_epistemic(const AgentState& s, const Transition& tr,
                                            RandomSource& rng) {
  auto ep = std::any_cast<std::shared_ptr<Epistemic>>(s.epistemic);
  EnnTransition enn_tr;
  enn_tr.action = tr.action;
  enn_tr.observation_bits = tr.observation.vec();
  ep->buffer.add(std::move(enn_tr));
  LogisticGvfLoss loss_spec;
  loss_spec.k = k_;
  loss_spec.columns_of = [this](ActionId a) -> const std::vector<std::vector<double>>& {
    return columns_[static_cast<std::size_t>(a)];
  };
  const LossSpec loss = loss_spec;
  for (int i = 0; i < config_.sgd_steps; ++i)
    epistemic_sgd_step(ep->net, ep->optimizer, ep->buffer, loss, config_.n_batch,
                       config_.n_index, rng, config_.index_mask_probability);
  return ep;
}

}  // namespace rlinfo
