#pragma once

#include "rlinfo/enn/ensemble.hpp"
#include "rlinfo/ids/gains.hpp"
#include "rlinfo/ids/two_sparse.hpp"

namespace rlinfo {

// Learning target for the variance gain: the greedy policy of the sampled
// value function (class-partition gain) or the value/GVF vector itself
// (per-action sample variance).
enum class TargetKind { optimal_action, gvf_vector };

struct PlannerConfig {
  enum class Kind { epsilon_greedy, thompson, ids };

  Kind kind = Kind::ids;
  double epsilon = 0.05;        // epsilon-greedy only
  int n_ids = 40;
  int granularity = 100;        // probability grid, must divide 1 evenly
  double eps_pess = 0.0;        // pessimistic numerator adjustment
  double sigma_noise = 0.0;     // pseudo-observation noise (gain shrink only)
  TargetKind target = TargetKind::optimal_action;
  int info_horizon_tau = 1;     // diagnostics only

  void validate() const {
    if (kind == Kind::ids && n_ids < 2) throw ContractViolation("PlannerConfig: n_ids >= 2");
    if (epsilon < 0.0 || epsilon > 1.0) throw ContractViolation("PlannerConfig: epsilon in [0,1]");
    if (granularity < 2) throw ContractViolation("PlannerConfig: granularity too small");
    if (eps_pess < 0.0) throw ContractViolation("PlannerConfig: eps_pess >= 0");
  }
};

// Uniform with probability epsilon, otherwise greedy on the index-averaged
// network output (lowest index ties).
ActionId epsilon_greedy_select(const EnsembleMlp& net, int state, double epsilon,
                               RandomSource& rng);

// Thompson over epistemic indices: the index is resampled only at episode
// boundaries; the action is greedy for f(state, z).
struct TsDecision {
  ActionId action = 0;
  EpistemicIndex index;
};
TsDecision ts_select(const EnsembleMlp& net, int state, EpistemicIndex current,
                     bool episode_boundary, RandomSource& rng);

// Sample-based variance-IDS decision from raw value samples; shared by the
// MLP and logit agents. samples[i][a] = draw i's value of action a;
// gvf_samples (optional) provides the per-action GVF vectors for the
// gvf_vector target.
struct IdsDecision {
  ActionId action = 0;
  TwoSparseDistribution nu;
  ShortfallGainTable table;
};

IdsDecision ids_decide(const std::vector<std::vector<double>>& value_samples,
                       const std::vector<std::vector<std::vector<double>>>& gvf_samples,
                       const PlannerConfig& config, RandomSource& rng);

// IDS on an ensemble value net at a one-hot state. The gvf_vector target
// treats each action's scalar value estimate as a one-component GVF.
IdsDecision ids_select(const EnsembleMlp& net, int state, const PlannerConfig& config,
                       RandomSource& rng);

}  // namespace rlinfo
