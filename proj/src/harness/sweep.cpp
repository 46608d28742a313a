#include "rlinfo/harness/sweep.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace rlinfo {

namespace fs = std::filesystem;

SweepSpec SweepSpec::from_json(const nlohmann::json& doc) {
  SweepSpec spec;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key != "base" && key != "sweep" && key != "seeds" && key != "cell_cap")
      throw ParseError("unknown key '" + key + "' in sweep spec");
  }
  if (doc.contains("base")) spec.base = doc.at("base");
  if (doc.contains("sweep")) {
    for (auto it = doc.at("sweep").begin(); it != doc.at("sweep").end(); ++it) {
      if (!it.value().is_array())
        throw ParseError("sweep values for '" + it.key() + "' must be an array");
      spec.sweep.emplace_back(it.key(),
                              std::vector<nlohmann::json>(it.value().begin(), it.value().end()));
    }
  }
  if (doc.contains("seeds")) {
    const auto& seeds = doc.at("seeds");
    if (seeds.is_array() && seeds.size() == 2) {
      spec.seed_begin = seeds[0].get<std::uint64_t>();
      spec.seed_end = seeds[1].get<std::uint64_t>();
    } else {
      throw ParseError("'seeds' must be a two-element [begin, end) array");
    }
  }
  if (doc.contains("cell_cap")) spec.cell_cap = doc.at("cell_cap").get<std::size_t>();
  return spec;
}

nlohmann::json SweepSpec::to_json() const {
  nlohmann::json sweep_doc = nlohmann::json::object();
  for (const auto& [key, values] : sweep) sweep_doc[key] = values;
  return nlohmann::json{{"base", base},
                        {"sweep", sweep_doc},
                        {"seeds", {seed_begin, seed_end}},
                        {"cell_cap", cell_cap}};
}

void apply_override(nlohmann::json& doc, const std::string& dotted_key,
                    const nlohmann::json& value) {
  nlohmann::json* node = &doc;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t dot = dotted_key.find('.', pos);
    const std::string part = dotted_key.substr(pos, dot - pos);
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    pos = dot + 1;
  }
}

SweepOutcome run_sweep(const SweepSpec& spec, int parallelism, const std::string& out_dir) {
  if (parallelism < 1) throw ParseError("parallelism must be >= 1");

  // Enumerate the cartesian product of the swept values.
  std::vector<std::vector<std::size_t>> cells;  // index per sweep dimension
  std::vector<std::size_t> counter(spec.sweep.size(), 0);
  for (;;) {
    cells.push_back(counter);
    if (cells.size() > spec.cell_cap) throw ParseError("sweep exceeds the cell cap");
    std::size_t dim = 0;
    for (; dim < counter.size(); ++dim) {
      if (++counter[dim] < spec.sweep[dim].second.size()) break;
      counter[dim] = 0;
    }
    if (dim == counter.size()) break;
    if (counter.empty()) break;
  }
  if (spec.sweep.empty()) cells.assign(1, {});

  struct Cell {
    ExperimentConfig config;
    std::string label;
  };
  std::vector<Cell> prepared;
  for (const auto& cell : cells) {
    nlohmann::json doc = spec.base;
    std::ostringstream label;
    for (std::size_t dim = 0; dim < cell.size(); ++dim) {
      const auto& [key, values] = spec.sweep[dim];
      apply_override(doc, key, values[cell[dim]]);
      if (dim) label << ' ';
      label << key << '=' << values[cell[dim]].dump();
    }
    std::string text = label.str();
    for (char& c : text)
      if (c == ',') c = ';';  // keep the aggregate CSV well-formed
    prepared.push_back({parse_config(doc), text});
  }

  const std::uint64_t num_seeds = spec.seed_end - spec.seed_begin;
  SweepOutcome outcome;
  outcome.results.resize(prepared.size() * num_seeds);
  outcome.cell_labels.resize(prepared.size());
  for (std::size_t i = 0; i < prepared.size(); ++i) outcome.cell_labels[i] = prepared[i].label;

  if (!out_dir.empty()) fs::create_directories(out_dir);

  std::atomic<std::size_t> next(0);
  std::atomic<int> failures(0);
  std::atomic<int> skipped(0);
  const std::size_t total = outcome.results.size();
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      const std::size_t cell = i / num_seeds;
      const std::uint64_t seed = spec.seed_begin + (i % num_seeds);
      const ExperimentConfig& config = prepared[cell].config;
      const std::uint64_t hash = config_hash(config);
      fs::path cache;
      if (!out_dir.empty()) {
        std::ostringstream name;
        name << "run_" << std::hex << hash << std::dec << "_" << seed << ".json";
        cache = fs::path(out_dir) / name.str();
        if (fs::exists(cache)) {
          try {
            std::ifstream in(cache);
            nlohmann::json doc;
            in >> doc;
            outcome.results[i] = RunResult::from_json(doc);
            ++skipped;
            continue;
          } catch (...) {
            // fall through and recompute
          }
        }
      }
      try {
        RunResult result = run_single(config, seed);
        if (!cache.empty()) {
          std::ofstream out(cache);
          out << result.to_json().dump() << '\n';
        }
        if (config.write_trace && !out_dir.empty()) {
          std::ostringstream name;
          name << "trace_" << std::hex << hash << std::dec << "_" << seed << ".csv";
          std::ofstream out(fs::path(out_dir) / name.str());
          out << result.trace_csv;
        }
        result.trace_csv.clear();
        result.regret_csv.clear();
        outcome.results[i] = std::move(result);
      } catch (const std::exception&) {
        ++failures;
        RunResult failed;
        failed.config_hash = hash;
        failed.seed = seed;
        failed.learning_time = -2;  // marks a failed run in the aggregate
        outcome.results[i] = failed;
      }
    }
  };

  std::vector<std::thread> threads;
  const int workers = std::min<std::size_t>(static_cast<std::size_t>(parallelism), total);
  for (int w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();

  outcome.failures = failures.load();
  outcome.skipped = skipped.load();

  std::ostringstream csv;
  csv << "cell," << RunResult::csv_header() << '\n';
  for (std::size_t i = 0; i < outcome.results.size(); ++i)
    csv << outcome.cell_labels[i / num_seeds] << ',' << outcome.results[i].csv_row() << '\n';
  outcome.aggregate_csv = csv.str();
  if (!out_dir.empty()) {
    std::ofstream out(fs::path(out_dir) / "aggregate.csv");
    out << outcome.aggregate_csv;
  }
  return outcome;
}

}  // namespace rlinfo
