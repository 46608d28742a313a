#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "rlinfo/agent.hpp"
#include "rlinfo/envs/factory.hpp"
#include "rlinfo/ids/enn_agent.hpp"
#include "rlinfo/ids/logit_agents.hpp"

namespace rlinfo {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully defaulted, validated experiment description. Every field has a
// documented default; unknown keys are rejected by parse_config.
struct ExperimentConfig {
  // env
  std::string env_name = "bernoulli_bandit";
  EnvParams env_params;

  // agent
  std::string family = "enn";    // enn | exact | logit | random
  std::string planner = "ids";   // ids | ts | egreedy | satisficing_ts | exact_ids | psrl
  std::string target = "optimal_action";  // optimal_action | gvf
  double epsilon = 0.05;
  double satisficing_eps = 0.0;
  int n_ids = 40;
  int granularity = 100;
  double eps_pess = 0.0;
  double sigma_noise = 0.0;
  int ensemble_size = 20;
  std::vector<int> hidden = {50, 50};
  double prior_scale = 1.0;
  double learning_rate = 1e-3;
  bool plain_sgd = false;
  double gamma = 0.99;
  int n_batch = 128;
  int n_index = 20;
  int replay_capacity = 10000;
  int min_replay = -1;  // -1 = n_batch
  int sgd_steps = 1;
  double mask_probability = 1.0;
  double init_std = 0.1;
  int train_draws = 2000;
  int gvf_components = 1;
  double prior_variance = 1.0;  // exact Gaussian agent

  // run
  int episodes = 100;
  int max_steps = 0;  // 0 = episodes * episode_length
  bool stop_when_learned = false;
  double learned_threshold = 0.9;
  int learning_window = 100;
  bool write_trace = false;

  std::string out_dir = "out";

  nlohmann::json to_json() const;
};

// Parses + validates the hierarchical key-value document. Unknown keys,
// type mismatches and out-of-range values raise ParseError naming the key.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);

// Stable 64-bit hash of a config, invariant to key ordering.
std::uint64_t config_hash(const ExperimentConfig& config);

std::unique_ptr<Environment> make_env(const ExperimentConfig& config, std::uint64_t seed);
std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, const Environment& env,
                                  std::uint64_t seed);

}  // namespace rlinfo
