#include "rlinfo/harness/runner.hpp"

#include <chrono>
#include <sstream>

#include "rlinfo/envs/chains.hpp"
#include "rlinfo/loop.hpp"

namespace rlinfo {

nlohmann::json RunResult::to_json() const {
  return nlohmann::json{{"config_hash", config_hash},
                        {"seed", seed},
                        {"episodes", episodes},
                        {"steps", steps},
                        {"learning_time", learning_time},
                        {"total_regret", total_regret},
                        {"total_reward", total_reward},
                        {"wall_ms", wall_ms},
                        {"reveal_actions", reveal_actions}};
}

RunResult RunResult::from_json(const nlohmann::json& doc) {
  RunResult r;
  r.config_hash = doc.at("config_hash").get<std::uint64_t>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.episodes = doc.at("episodes").get<int>();
  r.steps = doc.at("steps").get<int>();
  r.learning_time = doc.at("learning_time").get<int>();
  r.total_regret = doc.at("total_regret").get<double>();
  r.total_reward = doc.at("total_reward").get<double>();
  r.wall_ms = doc.at("wall_ms").get<double>();
  r.reveal_actions = doc.at("reveal_actions").get<int>();
  return r;
}

std::string RunResult::csv_header() {
  return "config_hash,seed,episodes,steps,learning_time,total_regret,total_reward,"
         "reveal_actions";
}

std::string RunResult::csv_row() const {
  std::ostringstream out;
  out << config_hash << ',' << seed << ',' << episodes << ',' << steps << ',' << learning_time
      << ',' << total_regret << ',' << total_reward << ',' << reveal_actions;
  return out.str();
}

RunResult run_single(const ExperimentConfig& config, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.config_hash = config_hash(config);
  result.seed = seed;

  const RandomSource master(seed);
  std::unique_ptr<Environment> env = make_env(config, master.split("env").next_u64());
  std::unique_ptr<Agent> agent = make_agent(config, *env, master.split("agent").next_u64());
  RandomSource loop_rng = master.split("loop");

  const int episode_len = env->episode_length();
  const int max_steps =
      config.max_steps > 0 ? config.max_steps : config.episodes * episode_len;

  // The simulation mirrors run_loop, with optional early stop at the
  // episode boundary once the learning-time threshold is met.
  std::vector<Transition> trace;
  trace.reserve(static_cast<std::size_t>(std::min(max_steps, 200000)));
  AgentState agent_state = agent->reset(loop_rng);
  int env_state = env->initial_state();
  std::vector<bool> episode_optimal;
  const QTable q_star = env->q_star();
  double episode_shortfall = 0.0;
  int completed_episodes = 0;
  int window_suboptimal = 0;
  int learned_at = -1;
  int reveal_actions = 0;
  const auto* informative_chain = dynamic_cast<const InformativeChain*>(env.get());

  for (int t = 0; t < max_steps; ++t) {
    const ActionId action = agent->act(agent_state, loop_rng);
    env->check_action(action);
    if (informative_chain != nullptr && env_state == informative_chain->tau() - 2 && action == 1)
      ++reveal_actions;
    const StepResult r = env->step(env_state, action, loop_rng);
    Transition tr{env_state, action, r.observation, r.reward, r.next_state, r.episode_terminal};
    agent_state = agent->update(agent_state, tr, loop_rng);
    episode_shortfall += q_star.value(env_state) - q_star.q[env_state][action];
    result.total_regret += q_star.value(env_state) - q_star.q[env_state][action];
    result.total_reward += r.reward;
    env_state = r.episode_terminal ? env->initial_state() : r.next_state;
    if (config.write_trace) trace.push_back(std::move(tr));
    ++result.steps;
    if (r.episode_terminal) {
      const bool optimal = episode_shortfall <= 1e-9;
      episode_optimal.push_back(optimal);
      episode_shortfall = 0.0;
      ++completed_episodes;
      // Incremental trailing-window learning-time check.
      if (!optimal) ++window_suboptimal;
      if (completed_episodes > config.learning_window &&
          !episode_optimal[static_cast<std::size_t>(completed_episodes - 1 -
                                                    config.learning_window)])
        --window_suboptimal;
      const int covered = std::min(completed_episodes, config.learning_window);
      if (learned_at < 0 &&
          static_cast<double>(window_suboptimal) / covered < config.learned_threshold) {
        learned_at = completed_episodes - 1;
        if (config.stop_when_learned) break;
      }
    }
  }

  result.episodes = completed_episodes;
  result.learning_time = learned_at;
  result.reveal_actions = reveal_actions;
  if (config.write_trace) {
    result.trace_csv = trace_to_csv(trace);
    result.regret_csv = build_regret_trace(*env, trace).to_csv();
  }
  result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             start)
                       .count();
  return result;
}

}  // namespace rlinfo
