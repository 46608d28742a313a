#include "rlinfo/ids/logit_agents.hpp"

#include <algorithm>

namespace rlinfo {

namespace {

void absorb_mask(LogitEpistemic& ep, std::vector<char> mask) {
  if (ep.consistent.empty()) {
    ep.consistent.assign(static_cast<std::size_t>(ep.logits.num_candidates()), 1);
  }
  for (std::size_t i = 0; i < ep.consistent.size(); ++i)
    ep.consistent[i] = ep.consistent[i] && mask[i] ? 1 : 0;
  ep.evidence.push_back(std::move(mask));
}

void train_on_evidence(LogitEpistemic& ep, const LogitAgentConfig& config, RandomSource&) {
  if (ep.evidence.empty()) return;
  // The intersection of the indicator masks is the full evidence; members
  // descend toward the restricted-uniform posterior until converged.
  for (int t = 0; t < config.train_draws; ++t) {
    const double loss =
        ep.logits.train_step_restricted_uniform(ep.consistent, config.learning_rate);
    if (loss < 1e-8) break;
  }
}

// Ensemble-mixture posterior over candidates.
std::vector<double> mixture_belief(const LogitEnsemble& logits) {
  std::vector<double> mix(static_cast<std::size_t>(logits.num_candidates()), 0.0);
  for (int z = 0; z < logits.num_members(); ++z) {
    const std::vector<double> p = logits.softmax(z);
    for (std::size_t c = 0; c < mix.size(); ++c) mix[c] += p[c];
  }
  for (double& v : mix) v /= logits.num_members();
  return mix;
}

// n stratified draws from the mixture (inverse CDF on a jittered grid);
// same marginal as i.i.d. draws with far less multinomial noise in the
// class fractions the gain estimator consumes.
std::vector<int> stratified_candidates(int n, const std::vector<double>& mix,
                                       RandomSource& rng) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  const double u = rng.uniform();
  double cum = mix[0];
  int c = 0;
  for (int i = 0; i < n; ++i) {
    const double target = (i + u) / n;
    while (target > cum && c + 1 < static_cast<int>(mix.size())) cum += mix[static_cast<std::size_t>(++c)];
    out.push_back(c);
  }
  return out;
}

ActionId argmax_lowest(const std::vector<double>& values) {
  int best = 0;
  for (std::size_t a = 1; a < values.size(); ++a)
    if (values[a] > values[static_cast<std::size_t>(best)]) best = static_cast<int>(a);
  return best;
}

// TS on the chain commits to one sampled model per episode.
struct ChainAlgoState {
  EpistemicIndex index;
  int candidate = -1;
};

}  // namespace

// ------------------------------------------------------ SparseBanditLogit

SparseBanditLogitAgent::SparseBanditLogitAgent(const SparseLinearBandit* env,
                                               LogitAgentConfig config, RandomSource init_rng)
    : env_(env), config_(std::move(config)), init_rng_(init_rng) {
  config_.planner.validate();
}

AgentState SparseBanditLogitAgent::reset(RandomSource&) {
  RandomSource rng = init_rng_;
  auto ep = std::make_shared<LogitEpistemic>(LogitEpistemic{
      LogitEnsemble(config_.ensemble_size, env_->num_arms(), config_.init_std, rng), {}});
  AgentState state;
  state.epistemic = ep;
  return state;
}

std::vector<double> SparseBanditLogitAgent::sampled_values(const LogitEpistemic& ep,
                                                            RandomSource& rng) const {
  const int z = rng.uniform_int(ep.logits.num_members());
  const int candidate = rng.categorical(ep.logits.softmax(z));
  std::vector<double> values(static_cast<std::size_t>(env_->num_actions()));
  for (int a = 0; a < env_->num_actions(); ++a)
    values[static_cast<std::size_t>(a)] =
        env_->action_vector(a)[static_cast<std::size_t>(candidate)];
  return values;
}

ActionId SparseBanditLogitAgent::act(const AgentState& state, RandomSource& rng) {
  const LogitEpistemic& ep = epistemic(state);
  if (config_.planner.kind == PlannerConfig::Kind::thompson) {
    // Every bandit step is an episode boundary: fresh draw per step; the
    // argmax of a sampled model is its rewarding arm, never a probe.
    return argmax_lowest(sampled_values(ep, rng));
  }
  std::vector<std::vector<double>> samples;
  samples.reserve(static_cast<std::size_t>(config_.planner.n_ids));
  for (int candidate : stratified_candidates(config_.planner.n_ids,
                                             mixture_belief(ep.logits), rng)) {
    std::vector<double> values(static_cast<std::size_t>(env_->num_actions()));
    for (int a = 0; a < env_->num_actions(); ++a)
      values[static_cast<std::size_t>(a)] =
          env_->action_vector(a)[static_cast<std::size_t>(candidate)];
    samples.push_back(std::move(values));
  }
  return ids_decide(samples, {}, config_.planner, rng).action;
}

std::any SparseBanditLogitAgent::update_epistemic(const AgentState& s, const Transition& tr,
                                                  RandomSource& rng) {
  auto ep = std::any_cast<std::shared_ptr<LogitEpistemic>>(s.epistemic);
  // Deterministic observation: positive iff the true arm lies in the
  // action's support.
  const bool positive = tr.observation.vec()[0] > 1e-12;
  std::vector<char> mask(static_cast<std::size_t>(env_->num_arms()), positive ? 0 : 1);
  for (int arm : env_->action_support(tr.action))
    mask[static_cast<std::size_t>(arm)] = positive ? 1 : 0;
  absorb_mask(*ep, std::move(mask));
  train_on_evidence(*ep, config_, rng);
  return ep;
}

// ------------------------------------------------- InformativeBanditLogit

InformativeBanditLogitAgent::InformativeBanditLogitAgent(const InformativeBandit* env,
                                                         LogitAgentConfig config,
                                                         RandomSource init_rng)
    : env_(env), config_(std::move(config)), init_rng_(init_rng) {
  config_.planner.validate();
}

AgentState InformativeBanditLogitAgent::reset(RandomSource&) {
  RandomSource rng = init_rng_;
  auto ep = std::make_shared<LogitEpistemic>(LogitEpistemic{
      LogitEnsemble(config_.ensemble_size, env_->num_arms(), config_.init_std, rng), {}});
  AgentState state;
  state.epistemic = ep;
  return state;
}

ActionId InformativeBanditLogitAgent::act(const AgentState& state, RandomSource& rng) {
  const LogitEpistemic& ep = epistemic(state);
  const int num_actions = env_->num_actions();
  const int num_arms = env_->num_arms();

  auto sample_candidate = [&]() {
    const int z = rng.uniform_int(ep.logits.num_members());
    return rng.categorical(ep.logits.softmax(z));
  };

  if (config_.planner.kind == PlannerConfig::Kind::thompson) {
    // argmax of the sampled model: its rewarding arm, never the reveal
    return sample_candidate();
  }

  std::vector<std::vector<double>> samples;
  std::vector<std::vector<std::vector<double>>> gvf;
  samples.reserve(static_cast<std::size_t>(config_.planner.n_ids));
  if (config_.planner.target == TargetKind::gvf_vector)
    gvf.assign(static_cast<std::size_t>(num_actions), {});
  for (const int candidate : stratified_candidates(config_.planner.n_ids,
                                                   mixture_belief(ep.logits), rng)) {
    std::vector<double> values(static_cast<std::size_t>(num_actions), 0.0);
    values[static_cast<std::size_t>(candidate)] = 1.0;  // revealing arm stays zero
    samples.push_back(std::move(values));
    if (config_.planner.target == TargetKind::gvf_vector) {
      // Full-observation GVF: reward bit plus the reveal channel, which
      // only the revealing arm ever populates.
      for (int a = 0; a < num_actions; ++a) {
        std::vector<double> components(static_cast<std::size_t>(1 + num_arms), 0.0);
        components[0] = samples.back()[static_cast<std::size_t>(a)];
        if (a == env_->revealing_arm())
          components[static_cast<std::size_t>(1 + candidate)] = 1.0;
        gvf[static_cast<std::size_t>(a)].push_back(std::move(components));
      }
    }
  }
  if (config_.planner.target != TargetKind::gvf_vector) {
    // IDS_Q: per-action scalar value variance.
    gvf.assign(static_cast<std::size_t>(num_actions), {});
    for (int a = 0; a < num_actions; ++a)
      for (const auto& draw : samples)
        gvf[static_cast<std::size_t>(a)].push_back({draw[static_cast<std::size_t>(a)]});
    PlannerConfig cfg = config_.planner;
    cfg.target = TargetKind::gvf_vector;
    return ids_decide(samples, gvf, cfg, rng).action;
  }
  return ids_decide(samples, gvf, config_.planner, rng).action;
}

std::any InformativeBanditLogitAgent::update_epistemic(const AgentState& s, const Transition& tr,
                                                       RandomSource& rng) {
  auto ep = std::any_cast<std::shared_ptr<LogitEpistemic>>(s.epistemic);
  const std::vector<double>& obs = tr.observation.vec();
  std::vector<char> mask(static_cast<std::size_t>(env_->num_arms()), 0);
  if (tr.action == env_->revealing_arm()) {
    mask[static_cast<std::size_t>(static_cast<int>(obs[1]))] = 1;
  } else if (obs[0] > 0.5) {
    mask[static_cast<std::size_t>(tr.action)] = 1;
  } else {
    std::fill(mask.begin(), mask.end(), 1);
    mask[static_cast<std::size_t>(tr.action)] = 0;
  }
  absorb_mask(*ep, std::move(mask));
  train_on_evidence(*ep, config_, rng);
  return ep;
}

// -------------------------------------------------- InformativeChainLogit

InformativeChainLogitAgent::InformativeChainLogitAgent(const InformativeChain* env,
                                                       LogitAgentConfig config,
                                                       RandomSource init_rng)
    : env_(env), config_(std::move(config)), init_rng_(init_rng) {
  config_.planner.validate();
}

AgentState InformativeChainLogitAgent::reset(RandomSource& rng) {
  RandomSource net_rng = init_rng_;
  auto ep = std::make_shared<LogitEpistemic>(LogitEpistemic{
      LogitEnsemble(config_.ensemble_size, env_->tau() - 1, config_.init_std, net_rng), {}});
  AgentState state;
  state.epistemic = ep;
  state.aleatoric = env_->initial_state();
  ChainAlgoState algo{EpistemicIndex::sample(config_.ensemble_size, rng), 0};
  algo.candidate = rng.categorical(ep->logits.softmax(algo.index.z));
  state.algorithmic = algo;
  return state;
}

ActionId InformativeChainLogitAgent::act(const AgentState& state, RandomSource& rng) {
  const LogitEpistemic& ep = epistemic(state);
  const int s = std::any_cast<int>(state.aleatoric);
  const int top_last = env_->tau() - 1;
  if (s >= top_last) return 0;  // reveal state or bottom row: nothing to decide

  // One sampled model: rewarding transition c drawn through a member's
  // belief; exiting pays iff c is here, continuing is worth anything only
  // while c lies ahead. The reveal channel of the GVF is the cumulant of
  // the fixed always-continue policy, which observes the reveal from any
  // top-row state; exiting forfeits it.
  const int candidates = env_->tau() - 1;
  auto model_q = [&](int c) {
    return std::pair<double, double>(c == s ? 1.0 : 0.0, c > s ? 1.0 : 0.0);
  };

  if (config_.planner.kind == PlannerConfig::Kind::thompson) {
    const auto& algo = std::any_cast<const ChainAlgoState&>(state.algorithmic);
    const auto [exit_q, go_q] = model_q(algo.candidate);
    return go_q > exit_q ? 1 : 0;
  }

  std::vector<std::vector<double>> samples;
  std::vector<std::vector<std::vector<double>>> gvf(2);
  samples.reserve(static_cast<std::size_t>(config_.planner.n_ids));
  const bool full_gvf = config_.planner.target == TargetKind::gvf_vector;
  for (const int c : stratified_candidates(config_.planner.n_ids,
                                            mixture_belief(ep.logits), rng)) {
    const auto [exit_q, go_q] = model_q(c);
    samples.push_back({exit_q, go_q});
    for (int a = 0; a < 2; ++a) {
      std::vector<double> components(static_cast<std::size_t>(1 + (full_gvf ? candidates : 0)),
                                     0.0);
      components[0] = samples.back()[static_cast<std::size_t>(a)];
      if (full_gvf && a == 1) components[static_cast<std::size_t>(1 + c)] = 1.0;
      gvf[static_cast<std::size_t>(a)].push_back(std::move(components));
    }
  }
  PlannerConfig cfg = config_.planner;
  cfg.target = TargetKind::gvf_vector;  // gain always from the assembled vectors
  return ids_decide(samples, gvf, cfg, rng).action;
}

std::any InformativeChainLogitAgent::update_algorithmic(const AgentState& s, const Transition& tr,
                                                        RandomSource& rng) {
  ChainAlgoState algo = std::any_cast<ChainAlgoState>(s.algorithmic);
  if (tr.episode_terminal) {
    algo.index = EpistemicIndex::sample(config_.ensemble_size, rng);
    algo.candidate =
        rng.categorical(epistemic(s).logits.softmax(algo.index.z));
  }
  return algo;
}

std::any InformativeChainLogitAgent::update_aleatoric(const AgentState&, const Transition& tr,
                                                      RandomSource&) {
  return tr.episode_terminal ? env_->initial_state() : tr.state_after;
}

std::any InformativeChainLogitAgent::update_epistemic(const AgentState& s, const Transition& tr,
                                                      RandomSource& rng) {
  auto ep = std::any_cast<std::shared_ptr<LogitEpistemic>>(s.epistemic);
  const int candidates = env_->tau() - 1;
  const int top_last = env_->tau() - 1;
  std::vector<char> mask;
  if (tr.observation.is_token() && tr.observation.token() >= env_->reveal_token(0)) {
    mask.assign(static_cast<std::size_t>(candidates), 0);
    mask[static_cast<std::size_t>(tr.observation.token() - env_->reveal_token(0))] = 1;
  } else if (tr.state_before < top_last && tr.action == 0) {
    // Observed the exit reward at state_before.
    if (tr.reward > 0.5) {
      mask.assign(static_cast<std::size_t>(candidates), 0);
      mask[static_cast<std::size_t>(tr.state_before)] = 1;
    } else {
      mask.assign(static_cast<std::size_t>(candidates), 1);
      mask[static_cast<std::size_t>(tr.state_before)] = 0;
    }
  }
  if (!mask.empty()) {
    absorb_mask(*ep, std::move(mask));
    train_on_evidence(*ep, config_, rng);
  }
  return ep;
}

}  // namespace rlinfo
