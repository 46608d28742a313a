#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "rlinfo/harness/plot.hpp"
#include "rlinfo/harness/presets.hpp"
#include "rlinfo/harness/runner.hpp"
#include "rlinfo/harness/sweep.hpp"

using namespace rlinfo;
namespace fs = std::filesystem;

TEST_CASE("empty document parses to the all-defaults config") {
  const ExperimentConfig config = parse_config_text("");
  CHECK(config.env_name == "bernoulli_bandit");
  CHECK(config.ensemble_size == 20);
  CHECK(config.n_batch == 128);
  CHECK(config.gamma == 0.99);
  CHECK(config.learning_rate == 1e-3);
  CHECK(config.replay_capacity == 10000);
  CHECK(config.n_ids == 40);
  CHECK(config.granularity == 100);
}

TEST_CASE("deep sea config inherits the reference agent defaults") {
  const ExperimentConfig config =
      parse_config_text(R"({"env": {"name": "deep_sea", "size": 10}})");
  CHECK(config.env_name == "deep_sea");
  CHECK(config.env_params.get("size", 0) == 10);
  CHECK(config.ensemble_size == 20);
  CHECK(config.hidden == std::vector<int>{50, 50});
  CHECK(config.n_batch == 128);
  auto env = make_env(config, 3);
  CHECK(env->num_states() == 100);
}

TEST_CASE("validation rejects bad keys and values by name") {
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"agent": {"n_idss": 4}})"),
                       doctest::Contains("agent.n_idss"), ParseError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"agent": {"planner": "ids", "n_ids": 1}})"),
                       doctest::Contains("n_ids"), ParseError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"run": {"episodes": "ten"}})"),
                       doctest::Contains("run.episodes"), ParseError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"env": {"name": "deep_sea", "depth": 4}})"),
                       doctest::Contains("env.depth"), ParseError);
  CHECK_THROWS_AS(parse_config_text("{nonsense"), ParseError);
}

TEST_CASE("config hash ignores key order") {
  const auto a = parse_config_text(
      R"({"env": {"name": "deep_sea", "size": 8}, "agent": {"planner": "ts", "gamma": 0.95}})");
  const auto b = parse_config_text(
      R"({"agent": {"gamma": 0.95, "planner": "ts"}, "env": {"size": 8, "name": "deep_sea"}})");
  CHECK(config_hash(a) == config_hash(b));
  auto c = a;
  c.gamma = 0.9;
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("run_single is deterministic in the seed") {
  const ExperimentConfig config = parse_config_text(
      R"({"env": {"name": "bernoulli_bandit", "arms": 3},
          "agent": {"family": "exact", "planner": "ts"},
          "run": {"episodes": 200}})");
  RunResult a = run_single(config, 7);
  RunResult b = run_single(config, 7);
  a.wall_ms = b.wall_ms = 0.0;  // wall clock is the one legitimately varying field
  CHECK(a.to_json().dump() == b.to_json().dump());
  const RunResult c = run_single(config, 8);
  CHECK(a.total_reward != c.total_reward);
}

TEST_CASE("sweep aggregates are independent of parallelism and resumable") {
  const nlohmann::json doc{
      {"base",
       {{"env", {{"name", "bernoulli_bandit"}, {"arms", 3}}},
        {"agent", {{"family", "exact"}, {"planner", "ts"}}},
        {"run", {{"episodes", 50}}}}},
      {"sweep", {{"agent.planner", {"ts", "satisficing_ts"}}}},
      {"seeds", {0, 3}}};
  const SweepSpec spec = SweepSpec::from_json(doc);
  const SweepOutcome serial = run_sweep(spec, 1);
  const SweepOutcome parallel = run_sweep(spec, 8);
  CHECK(serial.aggregate_csv == parallel.aggregate_csv);
  CHECK(serial.results.size() == 6);
  CHECK(serial.failures == 0);

  const fs::path dir = fs::temp_directory_path() / "rlinfo_sweep_test";
  fs::remove_all(dir);
  const SweepOutcome first = run_sweep(spec, 2, dir.string());
  CHECK(first.skipped == 0);
  const SweepOutcome resumed = run_sweep(spec, 2, dir.string());
  CHECK(resumed.skipped == 6);
  CHECK(resumed.aggregate_csv == first.aggregate_csv);
  fs::remove_all(dir);
}

TEST_CASE("sweep records individual failures and continues") {
  const nlohmann::json doc{
      {"base",
       {{"env", {{"name", "sparse_bandit"}, {"arms", 16}}},
        {"agent", {{"family", "exact"}, {"planner", "ts"}}},  // wrong family on purpose
        {"run", {{"episodes", 5}}}}},
      {"seeds", {0, 2}}};
  const SweepOutcome outcome = run_sweep(SweepSpec::from_json(doc), 1);
  CHECK(outcome.failures == 2);
  CHECK(outcome.results[0].learning_time == -2);
}

TEST_CASE("plot handles empty input and missing columns") {
  const std::string svg = emit_plot("cell,learning_time\n", "scaling");
  CHECK(svg.find("<svg") == 0);
  CHECK_THROWS_WITH_AS(emit_plot("cell,b\nx,2\n", "scaling"), doctest::Contains("learning_time"),
                       ParseError);
  CHECK_THROWS_AS(emit_plot("a,b\n", "nonsense"), ParseError);
}

TEST_CASE("plot renders scaling medians with a reference curve") {
  std::string csv = "cell," + RunResult::csv_header() + "\n";
  for (int size : {4, 6, 8})
    for (int seed = 0; seed < 3; ++seed) {
      csv += "env.size=" + std::to_string(size) + " agent.planner=\"ts\",0," +
             std::to_string(seed) + ",10,40," + std::to_string(size * 2) + ",1.5,3.0,0\n";
    }
  const std::string svg = emit_plot(csv, "scaling", "pow2");
  CHECK(svg.find("path") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("presets parse into runnable sweep specs") {
  for (const std::string& name : preset_names()) {
    const SweepSpec spec = preset(name);
    CHECK(spec.seed_end > spec.seed_begin);
    CHECK(!preset_description(name).empty());
    // base config must parse cleanly
    const ExperimentConfig config = parse_config(spec.base);
    (void)config;
  }
  CHECK_THROWS_AS(preset("fig99"), ParseError);
}

TEST_CASE("deep sea sweep enumerates sizes times planners") {
  const nlohmann::json doc{
      {"base",
       {{"env", {{"name", "deep_sea"}, {"size", 4}}},
        {"agent", {{"family", "enn"}, {"planner", "ids"}, {"min_replay", 4}}},
        {"run", {{"episodes", 1}}}}},
      {"sweep",
       {{"env.size", {4, 5, 6, 7, 8, 9, 10}},
        {"agent.planner", {"ids", "ts", "egreedy"}}}},
      {"seeds", {0, 2}}};
  const SweepOutcome outcome = run_sweep(SweepSpec::from_json(doc), 2);
  CHECK(outcome.results.size() == 7 * 3 * 2);
  CHECK(outcome.failures == 0);
}

TEST_CASE("trace csv lands in the run result when requested") {
  const ExperimentConfig config = parse_config_text(
      R"({"env": {"name": "reward_chain", "tau": 3},
          "agent": {"family": "random"},
          "run": {"episodes": 4, "write_trace": true}})");
  const RunResult result = run_single(config, 1);
  CHECK(result.trace_csv.rfind("step,episode,state,action,observation,reward,terminal", 0) == 0);
  CHECK(result.episodes == 4);
  CHECK(result.steps == 12);
}
