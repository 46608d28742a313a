#include "rlinfo/ids/planners.hpp"

#include <algorithm>
#include <cmath>

namespace rlinfo {

ActionId epsilon_greedy_select(const EnsembleMlp& net, int state, double epsilon,
                               RandomSource& rng) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw ContractViolation("epsilon_greedy_select: epsilon outside [0,1]");
  const int num_actions = net.output_dim();
  if (epsilon > 0.0 && rng.uniform() < epsilon) return rng.uniform_int(num_actions);
  std::vector<double> mean(static_cast<std::size_t>(num_actions), 0.0);
  for (int z = 0; z < net.num_members(); ++z) {
    const std::vector<double> q = net.forward_onehot(state, z);
    for (int a = 0; a < num_actions; ++a) mean[static_cast<std::size_t>(a)] += q[a];
  }
  int best = 0;
  for (int a = 1; a < num_actions; ++a)
    if (mean[static_cast<std::size_t>(a)] > mean[static_cast<std::size_t>(best)]) best = a;
  return best;
}

TsDecision ts_select(const EnsembleMlp& net, int state, EpistemicIndex current,
                     bool episode_boundary, RandomSource& rng) {
  TsDecision out;
  out.index = episode_boundary ? EpistemicIndex::sample(net.num_members(), rng) : current;
  const std::vector<double> q = net.forward_onehot(state, out.index.z);
  int best = 0;
  for (std::size_t a = 1; a < q.size(); ++a)
    if (q[a] > q[static_cast<std::size_t>(best)]) best = static_cast<int>(a);
  out.action = best;
  return out;
}

IdsDecision ids_decide(const std::vector<std::vector<double>>& value_samples,
                       const std::vector<std::vector<std::vector<double>>>& gvf_samples,
                       const PlannerConfig& config, RandomSource& rng) {
  config.validate();
  const int num_actions = static_cast<int>(value_samples[0].size());

  IdsDecision out;
  out.table.shortfall.assign(static_cast<std::size_t>(num_actions), 0.0);
  for (const auto& draw : value_samples) {
    double best = draw[0];
    for (double v : draw) best = std::max(best, v);
    for (int a = 0; a < num_actions; ++a)
      out.table.shortfall[static_cast<std::size_t>(a)] += best - draw[a];
  }
  for (double& s : out.table.shortfall)
    s = std::max(0.0, s / static_cast<double>(value_samples.size()));

  out.table.gain = config.target == TargetKind::optimal_action
                       ? variance_gain_optimal_action(value_samples)
                       : variance_gain_gvf(gvf_samples);

  if (config.sigma_noise > 0.0) {
    // Pseudo-observation noise only shrinks the variance lower bound by
    // the span factor (M1 / (M1 + M2))^2; uniform scaling leaves the
    // minimizer's support unchanged, so this matters for reported gains.
    double span = 0.0;
    if (config.target == TargetKind::optimal_action) {
      double lo = value_samples[0][0], hi = value_samples[0][0];
      for (const auto& draw : value_samples)
        for (double v : draw) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      span = hi - lo;
    } else {
      double lo = 0.0, hi = 0.0;
      bool first = true;
      for (const auto& per_action : gvf_samples)
        for (const auto& draw : per_action)
          for (double v : draw) {
            if (first) {
              lo = hi = v;
              first = false;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
      span = hi - lo;
    }
    const double noise_span = 4.0 * config.sigma_noise;  // ~2 sigma each side
    if (span > 0.0) {
      const double factor = (span / (span + noise_span)) * (span / (span + noise_span));
      for (double& g : out.table.gain) g *= factor;
    }
  }

  const TwoSparseResult opt =
      two_sparse_minimize(out.table, config.granularity, config.eps_pess);
  out.nu = opt.nu;
  if (opt.degenerate_fallback) {
    const int pick = rng.uniform_int(static_cast<int>(opt.fallback_support.size()));
    out.action = opt.fallback_support[static_cast<std::size_t>(pick)];
  } else {
    out.action = out.nu.sample(rng);
  }
  return out;
}

IdsDecision ids_select(const EnsembleMlp& net, int state, const PlannerConfig& config,
                       RandomSource& rng) {
  config.validate();
  std::vector<std::vector<double>> samples;
  samples.reserve(static_cast<std::size_t>(config.n_ids));
  for (int i = 0; i < config.n_ids; ++i) {
    const int z = rng.uniform_int(net.num_members());
    samples.push_back(net.forward_onehot(state, z));
  }
  std::vector<std::vector<std::vector<double>>> gvf;
  if (config.target == TargetKind::gvf_vector) {
    const int num_actions = net.output_dim();
    gvf.assign(static_cast<std::size_t>(num_actions), {});
    for (int a = 0; a < num_actions; ++a) {
      gvf[static_cast<std::size_t>(a)].reserve(samples.size());
      for (const auto& draw : samples)
        gvf[static_cast<std::size_t>(a)].push_back({draw[static_cast<std::size_t>(a)]});
    }
  }
  return ids_decide(samples, gvf, config, rng);
}

}  // namespace rlinfo
