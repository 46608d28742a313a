#include "rlinfo/harness/config.hpp"

#include <set>

#include "rlinfo/bayes/agents.hpp"

namespace rlinfo {

namespace {

void require_keys(const nlohmann::json& obj, const std::set<std::string>& known,
                  const std::string& scope) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) throw ParseError("unknown key '" + scope + it.key() + "'");
}

template <typename T>
T get_or(const nlohmann::json& obj, const std::string& key, T fallback, const std::string& scope) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("type mismatch for key '" + scope + key + "'");
  }
}

void check(bool ok, const std::string& message) {
  if (!ok) throw ParseError(message);
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json env{{"name", env_name}};
  for (const auto& [k, v] : env_params.values) env[k] = v;
  nlohmann::json agent{{"family", family},
                       {"planner", planner},
                       {"target", target},
                       {"epsilon", epsilon},
                       {"satisficing_eps", satisficing_eps},
                       {"n_ids", n_ids},
                       {"granularity", granularity},
                       {"eps_pess", eps_pess},
                       {"sigma_noise", sigma_noise},
                       {"ensemble_size", ensemble_size},
                       {"hidden", hidden},
                       {"prior_scale", prior_scale},
                       {"learning_rate", learning_rate},
                       {"plain_sgd", plain_sgd},
                       {"gamma", gamma},
                       {"n_batch", n_batch},
                       {"n_index", n_index},
                       {"replay_capacity", replay_capacity},
                       {"min_replay", min_replay},
                       {"sgd_steps", sgd_steps},
                       {"mask_probability", mask_probability},
                       {"init_std", init_std},
                       {"train_draws", train_draws},
                       {"gvf_components", gvf_components},
                       {"prior_variance", prior_variance}};
  nlohmann::json run{{"episodes", episodes},
                     {"max_steps", max_steps},
                     {"stop_when_learned", stop_when_learned},
                     {"learned_threshold", learned_threshold},
                     {"learning_window", learning_window},
                     {"write_trace", write_trace}};
  return nlohmann::json{{"env", env}, {"agent", agent}, {"run", run}, {"out", out_dir}};
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
  ExperimentConfig config;
  if (!doc.is_object()) throw ParseError("config root must be an object");
  require_keys(doc, {"env", "agent", "run", "out"}, "");

  if (doc.contains("env")) {
    const auto& env = doc.at("env");
    if (!env.is_object()) throw ParseError("'env' must be an object");
    config.env_name = get_or<std::string>(env, "name", config.env_name, "env.");
    static const std::set<std::string> numeric_keys{
        "arms", "size", "tau", "dimension", "components", "noise_std", "locations",
        "exit_reward"};
    for (auto it = env.begin(); it != env.end(); ++it) {
      if (it.key() == "name") continue;
      if (!numeric_keys.count(it.key()))
        throw ParseError("unknown key 'env." + it.key() + "'");
      if (!it.value().is_number())
        throw ParseError("type mismatch for key 'env." + it.key() + "'");
      config.env_params.values[it.key()] = it.value().get<double>();
    }
    config.env_params.name = config.env_name;
  }

  if (doc.contains("agent")) {
    const auto& agent = doc.at("agent");
    if (!agent.is_object()) throw ParseError("'agent' must be an object");
    require_keys(agent,
                 {"family", "planner", "target", "epsilon", "satisficing_eps", "n_ids",
                  "granularity", "eps_pess", "sigma_noise", "ensemble_size", "hidden",
                  "prior_scale", "learning_rate", "plain_sgd", "gamma", "n_batch", "n_index",
                  "replay_capacity", "min_replay", "sgd_steps", "mask_probability", "init_std",
                  "train_draws", "gvf_components", "prior_variance"},
                 "agent.");
    config.family = get_or<std::string>(agent, "family", config.family, "agent.");
    config.planner = get_or<std::string>(agent, "planner", config.planner, "agent.");
    config.target = get_or<std::string>(agent, "target", config.target, "agent.");
    config.epsilon = get_or<double>(agent, "epsilon", config.epsilon, "agent.");
    config.satisficing_eps =
        get_or<double>(agent, "satisficing_eps", config.satisficing_eps, "agent.");
    config.n_ids = get_or<int>(agent, "n_ids", config.n_ids, "agent.");
    config.granularity = get_or<int>(agent, "granularity", config.granularity, "agent.");
    config.eps_pess = get_or<double>(agent, "eps_pess", config.eps_pess, "agent.");
    config.sigma_noise = get_or<double>(agent, "sigma_noise", config.sigma_noise, "agent.");
    config.ensemble_size = get_or<int>(agent, "ensemble_size", config.ensemble_size, "agent.");
    config.hidden = get_or<std::vector<int>>(agent, "hidden", config.hidden, "agent.");
    config.prior_scale = get_or<double>(agent, "prior_scale", config.prior_scale, "agent.");
    config.learning_rate = get_or<double>(agent, "learning_rate", config.learning_rate, "agent.");
    config.plain_sgd = get_or<bool>(agent, "plain_sgd", config.plain_sgd, "agent.");
    config.gamma = get_or<double>(agent, "gamma", config.gamma, "agent.");
    config.n_batch = get_or<int>(agent, "n_batch", config.n_batch, "agent.");
    config.n_index = get_or<int>(agent, "n_index", config.n_index, "agent.");
    config.replay_capacity =
        get_or<int>(agent, "replay_capacity", config.replay_capacity, "agent.");
    config.min_replay = get_or<int>(agent, "min_replay", config.min_replay, "agent.");
    config.sgd_steps = get_or<int>(agent, "sgd_steps", config.sgd_steps, "agent.");
    config.mask_probability =
        get_or<double>(agent, "mask_probability", config.mask_probability, "agent.");
    config.init_std = get_or<double>(agent, "init_std", config.init_std, "agent.");
    config.train_draws = get_or<int>(agent, "train_draws", config.train_draws, "agent.");
    config.gvf_components = get_or<int>(agent, "gvf_components", config.gvf_components, "agent.");
    config.prior_variance =
        get_or<double>(agent, "prior_variance", config.prior_variance, "agent.");
  }

  if (doc.contains("run")) {
    const auto& run = doc.at("run");
    if (!run.is_object()) throw ParseError("'run' must be an object");
    require_keys(run,
                 {"episodes", "max_steps", "stop_when_learned", "learned_threshold",
                  "learning_window", "write_trace"},
                 "run.");
    config.episodes = get_or<int>(run, "episodes", config.episodes, "run.");
    config.max_steps = get_or<int>(run, "max_steps", config.max_steps, "run.");
    config.stop_when_learned =
        get_or<bool>(run, "stop_when_learned", config.stop_when_learned, "run.");
    config.learned_threshold =
        get_or<double>(run, "learned_threshold", config.learned_threshold, "run.");
    config.learning_window = get_or<int>(run, "learning_window", config.learning_window, "run.");
    config.write_trace = get_or<bool>(run, "write_trace", config.write_trace, "run.");
  }

  if (doc.contains("out")) {
    if (!doc.at("out").is_string()) throw ParseError("type mismatch for key 'out'");
    config.out_dir = doc.at("out").get<std::string>();
  }

  // Validation.
  static const std::set<std::string> planners{"ids", "ts",       "egreedy",
                                              "satisficing_ts", "exact_ids", "psrl"};
  check(planners.count(config.planner) == 1, "out-of-range value for key 'agent.planner'");
  static const std::set<std::string> families{"enn", "exact", "logit", "random"};
  check(families.count(config.family) == 1, "out-of-range value for key 'agent.family'");
  check(config.target == "optimal_action" || config.target == "gvf",
        "out-of-range value for key 'agent.target'");
  check(config.planner != "ids" || config.n_ids >= 2,
        "out-of-range value for key 'agent.n_ids' (needs >= 2)");
  check(config.epsilon >= 0.0 && config.epsilon <= 1.0,
        "out-of-range value for key 'agent.epsilon'");
  check(config.gamma >= 0.0 && config.gamma <= 1.0, "out-of-range value for key 'agent.gamma'");
  check(config.granularity >= 2, "out-of-range value for key 'agent.granularity'");
  check(config.eps_pess >= 0.0, "out-of-range value for key 'agent.eps_pess'");
  check(config.ensemble_size >= 1, "out-of-range value for key 'agent.ensemble_size'");
  check(config.episodes >= 1, "out-of-range value for key 'run.episodes'");
  check(config.learned_threshold > 0.0 && config.learned_threshold <= 1.0,
        "out-of-range value for key 'run.learned_threshold'");
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  if (text.empty()) {
    doc = nlohmann::json::object();
  } else {
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  return parse_config(doc);
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  // nlohmann::json objects iterate in sorted key order, so dump() is a
  // canonical form and the hash is reorder-stable.
  const std::string canonical = config.to_json().dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::unique_ptr<Environment> make_env(const ExperimentConfig& config, std::uint64_t seed) {
  return make_environment(config.env_params, seed);
}

std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, const Environment& env,
                                  std::uint64_t seed) {
  const RandomSource init = RandomSource(seed).split("agent_init");
  if (config.family == "random")
    return std::make_unique<UniformRandomAgent>(env.num_actions());

  if (config.family == "exact") {
    if (config.planner == "psrl") {
      const auto* ring = dynamic_cast<const RingMdp*>(&env);
      check(ring != nullptr, "psrl planner requires the ring_mdp environment");
      return std::make_unique<PsrlRingAgent>(ring);
    }
    if (const auto* gaussian = dynamic_cast<const LinearGaussianBandit*>(&env)) {
      check(config.planner == "ts", "exact Gaussian agent supports the ts planner");
      return std::make_unique<KalmanTsAgent>(gaussian, config.prior_variance);
    }
    const auto* bernoulli = dynamic_cast<const BernoulliBandit*>(&env);
    check(bernoulli != nullptr, "exact family requires a Bernoulli or Gaussian bandit");
    BetaBanditAgent::Planner planner = BetaBanditAgent::Planner::thompson;
    if (config.planner == "satisficing_ts") planner = BetaBanditAgent::Planner::satisficing;
    else if (config.planner == "exact_ids") planner = BetaBanditAgent::Planner::exact_ids;
    else check(config.planner == "ts", "unsupported planner for the exact bandit agent");
    return std::make_unique<BetaBanditAgent>(bernoulli->num_actions(), planner,
                                             config.satisficing_eps, config.granularity);
  }

  PlannerConfig planner;
  planner.kind = config.planner == "ts"        ? PlannerConfig::Kind::thompson
                 : config.planner == "egreedy" ? PlannerConfig::Kind::epsilon_greedy
                                               : PlannerConfig::Kind::ids;
  check(config.planner == "ts" || config.planner == "egreedy" || config.planner == "ids",
        "unsupported planner for family '" + config.family + "'");
  planner.epsilon = config.epsilon;
  planner.n_ids = config.n_ids;
  planner.granularity = config.granularity;
  planner.eps_pess = config.eps_pess;
  planner.sigma_noise = config.sigma_noise;
  planner.target =
      config.target == "gvf" ? TargetKind::gvf_vector : TargetKind::optimal_action;

  if (config.family == "logit") {
    LogitAgentConfig logit;
    logit.ensemble_size = config.ensemble_size;
    logit.init_std = config.init_std;
    logit.learning_rate = config.learning_rate;
    logit.train_draws = config.train_draws;
    logit.planner = planner;
    if (const auto* sparse = dynamic_cast<const SparseLinearBandit*>(&env))
      return std::make_unique<SparseBanditLogitAgent>(sparse, logit, init);
    if (const auto* info = dynamic_cast<const InformativeBandit*>(&env))
      return std::make_unique<InformativeBanditLogitAgent>(info, logit, init);
    const auto* chain = dynamic_cast<const InformativeChain*>(&env);
    check(chain != nullptr, "logit family requires a sparse or informative environment");
    return std::make_unique<InformativeChainLogitAgent>(chain, logit, init);
  }

  EnnAgentConfig enn;
  enn.ensemble_size = config.ensemble_size;
  enn.hidden = config.hidden;
  enn.prior_scale = config.prior_scale;
  enn.learning_rate = config.learning_rate;
  enn.plain_sgd = config.plain_sgd;
  enn.gamma = config.gamma;
  enn.n_batch = config.n_batch;
  enn.n_index = config.n_index;
  enn.replay_capacity = config.replay_capacity;
  enn.min_replay = config.min_replay;
  enn.sgd_steps = config.sgd_steps;
  enn.index_mask_probability = config.mask_probability;
  enn.planner = planner;
  if (const auto* logistic = dynamic_cast<const LogisticGvfBandit*>(&env))
    return std::make_unique<LogisticIdsAgent>(logistic, config.gvf_components, enn, init);
  return std::make_unique<EnnQAgent>(env.num_states(), env.num_actions(), env.initial_state(),
                                     enn, init);
}

}  // namespace rlinfo
