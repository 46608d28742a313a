#pragma once

#include <map>
#include <vector>

#include "rlinfo/harness/runner.hpp"

namespace rlinfo {

// Base config plus one or two swept parameters (dotted keys into the
// config document) and a seed range.
struct SweepSpec {
  nlohmann::json base = nlohmann::json::object();
  // Insertion order matters for the cell enumeration, hence a vector.
  std::vector<std::pair<std::string, std::vector<nlohmann::json>>> sweep;
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_end = 1;  // exclusive
  std::size_t cell_cap = 4096;

  static SweepSpec from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};

struct SweepOutcome {
  std::vector<RunResult> results;  // deterministic order: cell-major, then seed
  std::vector<std::string> cell_labels;
  std::string aggregate_csv;
  int failures = 0;
  int skipped = 0;  // resumed from cache
};

// Runs every (cell, seed) pair across `parallelism` workers. Results are
// deterministic and independent of the worker count. When out_dir is
// nonempty, per-run JSON records act as a resume cache and the aggregate
// CSV is written there.
SweepOutcome run_sweep(const SweepSpec& spec, int parallelism, const std::string& out_dir = "");

// Applies a dotted-key override ("agent.n_ids" = 40) to a config document.
void apply_override(nlohmann::json& doc, const std::string& dotted_key,
                    const nlohmann::json& value);

}  // namespace rlinfo
