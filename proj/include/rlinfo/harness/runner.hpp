#pragma once

#include "rlinfo/harness/config.hpp"
#include "rlinfo/info/diagnostics.hpp"

namespace rlinfo {

struct RunResult {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  int episodes = 0;
  int steps = 0;
  int learning_time = -1;        // -1: not reached
  double total_regret = 0.0;
  double total_reward = 0.0;
  double wall_ms = 0.0;
  int reveal_actions = 0;        // informative-chain diagnostics
  std::string trace_csv;         // populated when config.write_trace
  std::string regret_csv;

  nlohmann::json to_json() const;
  static RunResult from_json(const nlohmann::json& doc);
  static std::string csv_header();
  std::string csv_row() const;
};

// One seeded run: builds env + agent from the config, runs the requested
// number of episodes (stopping early once learned, when asked to), and
// reduces the trace to a RunResult.
RunResult run_single(const ExperimentConfig& config, std::uint64_t seed);

}  // namespace rlinfo
