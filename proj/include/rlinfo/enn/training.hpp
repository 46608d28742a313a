#pragma once

#include <functional>
#include <variant>

#include "rlinfo/enn/ensemble.hpp"
#include "rlinfo/enn/replay.hpp"

namespace rlinfo {

// Adam state for one ensemble: per-parameter moment accumulators laid out
// like the trainable networks.
struct OptimizerState {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  bool plain_sgd = false;  // skip the moment machinery entirely
  long step_count = 0;
  std::vector<Mlp::Grad> m;  // first moments, one per member
  std::vector<Mlp::Grad> v;  // second moments

  static OptimizerState adam(const EnsembleMlp& net, double learning_rate);
};

// Squared TD error of one transition at a single epistemic index; the
// bootstrap uses target_params (theta^-) and is dropped on terminals.
double q_loss(const EnsembleMlp& net, const EnsembleMlp& target_params, int z,
              const EnnTransition& tr, double gamma);

// Per-component logistic terms over the first k observation components:
// each term is the probability the model puts on the complement of the
// observed bit, which is 1/2 at logit zero and vanishes as the logit
// matches the data. `columns[j]` is the action's j-th feature column and
// the network output (at the constant input) is the feature-space estimate.
double gvf_log_loss(const EnsembleMlp& net, int z,
                    const std::vector<double>& observation_bits,
                    const std::vector<std::vector<double>>& columns, int k);

// Logistic negative log-likelihood over the first k components. This is
// the training objective: its estimates converge to the observation
// probabilities, where the complement-probability form saturates.
double gvf_nll_loss(const EnsembleMlp& net, int z,
                    const std::vector<double>& observation_bits,
                    const std::vector<std::vector<double>>& columns, int k);

struct QLearningLoss {
  double gamma = 0.99;
};

struct LogisticGvfLoss {
  int k = 1;
  bool complement_form = false;  // true trains on gvf_log_loss instead
  // columns_of(action)[j] = feature column j; owned by the environment.
  std::function<const std::vector<std::vector<double>>&(ActionId)> columns_of;
};

struct CategoricalCrossEntropyLoss {};  // lives on LogitEnsemble, not the MLP path

using LossSpec = std::variant<QLearningLoss, LogisticGvfLoss, CategoricalCrossEntropyLoss>;

// One Adam step on the loss averaged over n_index sampled indices x
// n_batch sampled transitions (Bernoulli index masking optional, 1.0 = no
// masking). Prior networks untouched. Returns false (no-op) while the
// buffer is below its min size.
bool epistemic_sgd_step(EnsembleMlp& net, OptimizerState& optimizer, const ReplayBuffer& buffer,
                        const LossSpec& loss, int n_batch, int n_index, RandomSource& rng,
                        double index_mask_probability = 1.0);

}  // namespace rlinfo
