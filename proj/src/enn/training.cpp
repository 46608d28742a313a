#include "rlinfo/enn/training.hpp"

#include <cmath>

namespace rlinfo {

OptimizerState OptimizerState::adam(const EnsembleMlp& net, double learning_rate) {
  OptimizerState opt;
  opt.learning_rate = learning_rate;
  opt.m.resize(static_cast<std::size_t>(net.num_members()));
  opt.v.resize(static_cast<std::size_t>(net.num_members()));
  for (int z = 0; z < net.num_members(); ++z) {
    opt.m[static_cast<std::size_t>(z)].resize(net.member(z));
    opt.v[static_cast<std::size_t>(z)].resize(net.member(z));
  }
  return opt;
}

double q_loss(const EnsembleMlp& net, const EnsembleMlp& target_params, int z,
              const EnnTransition& tr, double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw ContractViolation("q_loss: gamma outside [0,1]");
  const std::vector<double> q = net.forward_onehot(tr.state, z);
  double target = tr.reward;
  if (!tr.terminal) {
    const std::vector<double> next = target_params.forward_onehot(tr.next_state, z);
    double best = next[0];
    for (double x : next) best = std::max(best, x);
    target += gamma * best;
  }
  const double err = q[static_cast<std::size_t>(tr.action)] - target;
  return err * err;
}

double gvf_log_loss(const EnsembleMlp& net, int z, const std::vector<double>& observation_bits,
                    const std::vector<std::vector<double>>& columns, int k) {
  if (k < 1 || k > static_cast<int>(columns.size()))
    throw ContractViolation("gvf_log_loss: k out of range");
  const std::vector<double> phi = net.forward(std::vector<double>{1.0}, z);
  double loss = 0.0;
  for (int j = 0; j < k; ++j) {
    double logit = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) logit += columns[j][i] * phi[i];
    const double p1 = 1.0 / (1.0 + std::exp(-logit));
    loss += observation_bits[static_cast<std::size_t>(j)] > 0.5 ? 1.0 - p1 : p1;
  }
  return loss;
}

double gvf_nll_loss(const EnsembleMlp& net, int z, const std::vector<double>& observation_bits,
                    const std::vector<std::vector<double>>& columns, int k) {
  if (k < 1 || k > static_cast<int>(columns.size()))
    throw ContractViolation("gvf_nll_loss: k out of range");
  const std::vector<double> phi = net.forward(std::vector<double>{1.0}, z);
  double loss = 0.0;
  for (int j = 0; j < k; ++j) {
    double logit = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) logit += columns[j][i] * phi[i];
    // -log sigmoid(+-logit), numerically stable softplus form
    const double x = observation_bits[static_cast<std::size_t>(j)] > 0.5 ? logit : -logit;
    loss += x > -30.0 ? std::log1p(std::exp(-x)) : -x;
  }
  return loss;
}

namespace {

Mlp::Workspace& ws_prior() {
  thread_local Mlp::Workspace ws;
  return ws;
}

// Gradient of the Q loss at one (z, transition), scaled by `weight` and
// accumulated into grad. theta^- is the current net, per the displayed
// update; the bootstrap carries no gradient.
double q_loss_grad(const EnsembleMlp& net, int z, const EnnTransition& tr, double gamma,
                   Mlp::Workspace& ws, Mlp::Grad& grad, double weight) {
  double target = tr.reward;
  if (!tr.terminal) {
    const std::vector<double> next = net.forward_onehot(tr.next_state, z);
    double best = next[0];
    for (double x : next) best = std::max(best, x);
    target += gamma * best;
  }
  const Mlp& trainable = net.member(z);
  std::vector<double> out = trainable.forward_onehot(tr.state, ws);
  if (net.prior_scale() != 0.0) {
    const std::vector<double>& p = net.prior_member(z).forward_onehot(tr.state, ws_prior());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += net.prior_scale() * p[i];
  }
  const double err = out[static_cast<std::size_t>(tr.action)] - target;
  std::vector<double> dout(out.size(), 0.0);
  dout[static_cast<std::size_t>(tr.action)] = 2.0 * err * weight;
  trainable.backward(dout, ws, grad);
  return err * err;
}

double gvf_loss_grad(const EnsembleMlp& net, int z, const EnnTransition& tr,
                     const LogisticGvfLoss& spec, Mlp::Workspace& ws, Mlp::Grad& grad,
                     double weight) {
  const std::vector<std::vector<double>>& columns = spec.columns_of(tr.action);
  const Mlp& trainable = net.member(z);
  const std::vector<double> x{1.0};
  std::vector<double> phi = trainable.forward(x, ws);
  if (net.prior_scale() != 0.0) {
    const std::vector<double>& p = net.prior_member(z).forward(x, ws_prior());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += net.prior_scale() * p[i];
  }
  double loss = 0.0;
  std::vector<double> dphi(phi.size(), 0.0);
  const int k = spec.k;
  for (int j = 0; j < k; ++j) {
    double logit = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) logit += columns[j][i] * phi[i];
    const double p1 = 1.0 / (1.0 + std::exp(-logit));
    const bool bit = tr.observation_bits[static_cast<std::size_t>(j)] > 0.5;
    double dlogit;
    if (spec.complement_form) {
      loss += bit ? 1.0 - p1 : p1;
      dlogit = (bit ? -1.0 : 1.0) * p1 * (1.0 - p1);
    } else {
      const double x = bit ? logit : -logit;
      loss += x > -30.0 ? std::log1p(std::exp(-x)) : -x;
      dlogit = p1 - (bit ? 1.0 : 0.0);
    }
    for (std::size_t i = 0; i < phi.size(); ++i) dphi[i] += dlogit * columns[j][i];
  }
  for (double& d : dphi) d *= weight;
  trainable.backward(dphi, ws, grad);
  return loss;
}

void adam_step(Mlp& net, Mlp::Grad& grad, Mlp::Grad& m, Mlp::Grad& v, const OptimizerState& opt,
               long t) {
  if (opt.plain_sgd) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      for (std::size_t i = 0; i < net.layers[l].w.size(); ++i)
        net.layers[l].w[i] -= opt.learning_rate * grad.layers[l].w[i];
      for (std::size_t i = 0; i < net.layers[l].b.size(); ++i)
        net.layers[l].b[i] -= opt.learning_rate * grad.layers[l].b[i];
    }
    return;
  }
  const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(t));
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    auto update = [&](std::vector<double>& params, std::vector<double>& g, std::vector<double>& mm,
                      std::vector<double>& vv) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        mm[i] = opt.beta1 * mm[i] + (1.0 - opt.beta1) * g[i];
        vv[i] = opt.beta2 * vv[i] + (1.0 - opt.beta2) * g[i] * g[i];
        const double mhat = mm[i] / bc1;
        const double vhat = vv[i] / bc2;
        params[i] -= opt.learning_rate * mhat / (std::sqrt(vhat) + opt.eps);
      }
    };
    update(net.layers[l].w, grad.layers[l].w, m.layers[l].w, v.layers[l].w);
    update(net.layers[l].b, grad.layers[l].b, m.layers[l].b, v.layers[l].b);
  }
}

}  // namespace

bool epistemic_sgd_step(EnsembleMlp& net, OptimizerState& optimizer, const ReplayBuffer& buffer,
                        const LossSpec& loss, int n_batch, int n_index, RandomSource& rng,
                        double index_mask_probability) {
  if (!buffer.ready() || buffer.size() == 0) return false;
  if (n_batch < 1 || n_index < 1) throw ContractViolation("epistemic_sgd_step: bad sizes");

  const std::vector<const EnnTransition*> batch = buffer.sample(n_batch, rng);

  // n_index == member count enumerates every member (the ensemble
  // realization of the reference distribution); otherwise indices are
  // sampled uniformly with replacement.
  std::vector<int> indices;
  if (n_index == net.num_members()) {
    indices.resize(static_cast<std::size_t>(n_index));
    for (int z = 0; z < n_index; ++z) indices[static_cast<std::size_t>(z)] = z;
  } else {
    indices.reserve(static_cast<std::size_t>(n_index));
    for (int i = 0; i < n_index; ++i) indices.push_back(rng.uniform_int(net.num_members()));
  }

  thread_local std::vector<Mlp::Grad> grads;
  thread_local std::vector<Mlp::Workspace> works;
  grads.resize(static_cast<std::size_t>(net.num_members()));
  works.resize(static_cast<std::size_t>(net.num_members()));
  for (int z = 0; z < net.num_members(); ++z)
    grads[static_cast<std::size_t>(z)].resize(net.member(z));  // assign() also zeroes

  const double weight = 1.0 / (static_cast<double>(n_index) * n_batch);
  for (int z : indices) {
    Mlp::Grad& grad = grads[static_cast<std::size_t>(z)];
    Mlp::Workspace& ws = works[static_cast<std::size_t>(z)];
    for (const EnnTransition* tr : batch) {
      if (index_mask_probability < 1.0 && !rng.bernoulli(index_mask_probability)) continue;
      if (std::holds_alternative<QLearningLoss>(loss)) {
        q_loss_grad(net, z, *tr, std::get<QLearningLoss>(loss).gamma, ws, grad, weight);
      } else if (std::holds_alternative<LogisticGvfLoss>(loss)) {
        gvf_loss_grad(net, z, *tr, std::get<LogisticGvfLoss>(loss), ws, grad, weight);
      } else {
        throw ContractViolation("epistemic_sgd_step: loss not supported on the MLP path");
      }
    }
  }

  ++optimizer.step_count;
  for (int z = 0; z < net.num_members(); ++z)
    adam_step(net.mutable_member(z), grads[static_cast<std::size_t>(z)],
              optimizer.m[static_cast<std::size_t>(z)], optimizer.v[static_cast<std::size_t>(z)],
              optimizer, optimizer.step_count);
  return true;
}

}  // namespace rlinfo
