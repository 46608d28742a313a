#pragma once

// Shared oracle helpers for the unit and acceptance suites.

#include <map>
#include <vector>

#include "rlinfo/info/measures.hpp"
#include "rlinfo/random.hpp"

namespace rlinfo::testutil {

// Random discrete instance of a bounded scalar GVF observed through a
// sampled action: finitely many environments, each with a target label and
// a per-action value on a small grid in [0,1].
struct GvfInstance {
  std::vector<double> env_prob;          // over environments
  std::vector<int> target;               // target label per environment
  std::vector<std::vector<double>> q;    // q[e][a] in [0,1]
  std::vector<double> nu;                // action distribution

  static GvfInstance random(RandomSource& rng) {
    GvfInstance inst;
    const int num_envs = 2 + rng.uniform_int(5);
    const int num_actions = 2 + rng.uniform_int(3);
    const int num_targets = 2 + rng.uniform_int(2);
    static const double grid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    inst.env_prob.resize(static_cast<std::size_t>(num_envs));
    double total = 0.0;
    for (double& w : inst.env_prob) {
      w = 0.05 + rng.uniform();
      total += w;
    }
    for (double& w : inst.env_prob) w /= total;
    inst.target.resize(static_cast<std::size_t>(num_envs));
    inst.q.assign(static_cast<std::size_t>(num_envs),
                  std::vector<double>(static_cast<std::size_t>(num_actions)));
    for (int e = 0; e < num_envs; ++e) {
      inst.target[static_cast<std::size_t>(e)] = rng.uniform_int(num_targets);
      for (int a = 0; a < num_actions; ++a)
        inst.q[static_cast<std::size_t>(e)][static_cast<std::size_t>(a)] =
            grid[rng.uniform_int(5)];
    }
    inst.nu.resize(static_cast<std::size_t>(num_actions));
    total = 0.0;
    for (double& p : inst.nu) {
      p = 0.05 + rng.uniform();
      total += p;
    }
    for (double& p : inst.nu) p /= total;
    return inst;
  }

  // Exact I(target; action, pseudo-observation) in nats, zero noise.
  double exact_mutual_information() const {
    const int num_actions = static_cast<int>(nu.size());
    int num_targets = 0;
    for (int t : target) num_targets = std::max(num_targets, t + 1);
    // flatten (a, y) outcomes over the value grid
    std::map<std::pair<int, long long>, int> outcome_index;
    auto key_of = [](int a, double y) {
      return std::pair<int, long long>(a, static_cast<long long>(y * 1e9 + 0.5));
    };
    for (std::size_t e = 0; e < q.size(); ++e)
      for (int a = 0; a < num_actions; ++a) {
        const auto key = key_of(a, q[e][static_cast<std::size_t>(a)]);
        if (!outcome_index.count(key))
          outcome_index[key] = static_cast<int>(outcome_index.size());
      }
    std::vector<std::vector<double>> joint(
        static_cast<std::size_t>(num_targets),
        std::vector<double>(outcome_index.size(), 0.0));
    for (std::size_t e = 0; e < q.size(); ++e)
      for (int a = 0; a < num_actions; ++a) {
        const int o = outcome_index[key_of(a, q[e][static_cast<std::size_t>(a)])];
        joint[static_cast<std::size_t>(target[e])][static_cast<std::size_t>(o)] +=
            env_prob[e] * nu[static_cast<std::size_t>(a)];
      }
    return mutual_information(joint, LogBase::nats);
  }

  // Variance term: sum_a nu(a) Var_target(E[q(a) | target]).
  double conditional_variance_term() const {
    const int num_actions = static_cast<int>(nu.size());
    int num_targets = 0;
    for (int t : target) num_targets = std::max(num_targets, t + 1);
    double result = 0.0;
    for (int a = 0; a < num_actions; ++a) {
      std::vector<double> mass(static_cast<std::size_t>(num_targets), 0.0);
      std::vector<double> mean(static_cast<std::size_t>(num_targets), 0.0);
      double overall = 0.0;
      for (std::size_t e = 0; e < q.size(); ++e) {
        mass[static_cast<std::size_t>(target[e])] += env_prob[e];
        mean[static_cast<std::size_t>(target[e])] += env_prob[e] * q[e][static_cast<std::size_t>(a)];
        overall += env_prob[e] * q[e][static_cast<std::size_t>(a)];
      }
      double var = 0.0;
      for (int c = 0; c < num_targets; ++c) {
        if (mass[static_cast<std::size_t>(c)] <= 0.0) continue;
        const double m = mean[static_cast<std::size_t>(c)] / mass[static_cast<std::size_t>(c)];
        var += mass[static_cast<std::size_t>(c)] * (m - overall) * (m - overall);
      }
      result += nu[static_cast<std::size_t>(a)] * var;
    }
    return result;
  }
};

}  // namespace rlinfo::testutil
