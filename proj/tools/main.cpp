#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rlinfo/harness/plot.hpp"
#include "rlinfo/harness/presets.hpp"
#include "rlinfo/harness/sweep.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Output directory resolution: flag wins, then the environment override,
// then the config value.
std::string resolve_out_dir(const std::string& flag, const std::string& from_config) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("IDSBENCH_OUT"); env != nullptr && *env) return env;
  return from_config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information-directed agent experiment harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, preset_name, csv_path, kind, reference;
  std::uint64_t seed = 0;
  std::string seed_range;
  int parallelism = 1;

  CLI::App* run_cmd = app.add_subcommand("run", "run a single config");
  run_cmd->add_option("--config", config_path, "config JSON path");
  run_cmd->add_option("--seed", seed, "run seed")->default_val(0);
  run_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a sweep spec or preset");
  sweep_cmd->add_option("--config", config_path, "sweep spec JSON path");
  sweep_cmd->add_option("--preset", preset_name, "named preset (see list-presets)");
  sweep_cmd->add_option("--seeds", seed_range, "seed range A..B (end exclusive)");
  sweep_cmd->add_option("--parallelism", parallelism, "worker threads")->default_val(1);
  sweep_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* plot_cmd = app.add_subcommand("plot", "render an aggregate CSV to SVG");
  plot_cmd->add_option("--csv", csv_path, "aggregate CSV path")->required();
  plot_cmd->add_option("--kind", kind, "plot kind: scaling | lines")->required();
  plot_cmd->add_option("--reference", reference, "reference curve: pow2 | identity | log");
  plot_cmd->add_option("--out", out_dir, "output directory");

  app.add_subcommand("list-presets", "list the named experiment presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("run")) {
      rlinfo::ExperimentConfig config =
          rlinfo::parse_config_text(config_path.empty() ? "" : read_file(config_path));
      const std::string dir = resolve_out_dir(out_dir, config.out_dir);
      const rlinfo::RunResult result = rlinfo::run_single(config, seed);
      fs::create_directories(dir);
      std::ofstream(fs::path(dir) / "result.json") << result.to_json().dump(2) << '\n';
      if (config.write_trace) {
        std::ofstream(fs::path(dir) / "trace.csv") << result.trace_csv;
        std::ofstream(fs::path(dir) / "regret.csv") << result.regret_csv;
      }
      std::cout << result.to_json().dump(2) << std::endl;
      return 0;
    }
    if (app.got_subcommand("sweep")) {
      rlinfo::SweepSpec spec;
      if (!preset_name.empty())
        spec = rlinfo::preset(preset_name);
      else if (!config_path.empty())
        spec = rlinfo::SweepSpec::from_json(nlohmann::json::parse(read_file(config_path)));
      else
        throw std::runtime_error("sweep needs --config or --preset");
      if (!seed_range.empty()) {
        const std::size_t dots = seed_range.find("..");
        if (dots == std::string::npos)
          throw std::runtime_error("--seeds expects the form A..B");
        spec.seed_begin = std::stoull(seed_range.substr(0, dots));
        spec.seed_end = std::stoull(seed_range.substr(dots + 2));
      }
      const std::string dir = resolve_out_dir(out_dir, "out");
      const rlinfo::SweepOutcome outcome = rlinfo::run_sweep(spec, parallelism, dir);
      std::cout << "runs: " << outcome.results.size() << "  failures: " << outcome.failures
                << "  resumed: " << outcome.skipped << "\naggregate: " << dir
                << "/aggregate.csv" << std::endl;
      return outcome.failures == 0 ? 0 : 1;
    }
    if (app.got_subcommand("plot")) {
      const std::string svg = rlinfo::emit_plot(read_file(csv_path), kind, reference);
      const std::string dir = resolve_out_dir(out_dir, ".");
      fs::create_directories(dir);
      const fs::path out_path = fs::path(dir) / (kind + ".svg");
      std::ofstream(out_path) << svg;
      std::cout << out_path.string() << std::endl;
      return 0;
    }
    if (app.got_subcommand("list-presets")) {
      for (const std::string& name : rlinfo::preset_names())
        std::cout << name << "\n    " << rlinfo::preset_description(name) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
