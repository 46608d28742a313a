#include "rlinfo/envs/bandits.hpp"

#include <algorithm>
#include <cmath>

namespace rlinfo {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------- Bernoulli

BernoulliBandit::BernoulliBandit(std::vector<double> heads_probabilities)
    : p_(std::move(heads_probabilities)) {
  if (p_.empty()) throw ContractViolation("BernoulliBandit: needs at least one arm");
  for (double v : p_)
    if (v < 0.0 || v > 1.0) throw ContractViolation("BernoulliBandit: p outside [0,1]");
}

StepResult BernoulliBandit::step(int, ActionId action, RandomSource& rng) const {
  const int outcome = rng.bernoulli(p_[action]) ? 1 : 0;
  return {Observation(outcome), static_cast<double>(outcome), 0, true};
}

std::vector<Branch> BernoulliBandit::branches(int, ActionId action) const {
  return {{1.0 - p_[action], Observation(0), 0.0, 0, true},
          {p_[action], Observation(1), 1.0, 0, true}};
}

double BernoulliBandit::optimal_value() const {
  return *std::max_element(p_.begin(), p_.end());
}

ManyArmedBandit::ManyArmedBandit(int num_arms, std::uint64_t seed)
    : BernoulliBandit([&] {
        RandomSource rng(seed);
        std::vector<double> means(static_cast<std::size_t>(num_arms));
        for (double& m : means) m = rng.uniform();
        return means;
      }()) {}

// ------------------------------------------------------------ LinearGaussian

LinearGaussianBandit::LinearGaussianBandit(std::vector<double> theta, double noise_std,
                                           std::vector<std::vector<double>> action_set)
    : theta_(std::move(theta)), noise_std_(noise_std), actions_(std::move(action_set)) {
  for (const auto& a : actions_)
    if (a.size() != theta_.size())
      throw ContractViolation("LinearGaussianBandit: action dimension mismatch");
}

LinearGaussianBandit LinearGaussianBandit::canonical(std::vector<double> theta,
                                                     double noise_std) {
  std::vector<std::vector<double>> actions;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    std::vector<double> e(theta.size(), 0.0);
    e[i] = 1.0;
    actions.push_back(std::move(e));
  }
  return LinearGaussianBandit(std::move(theta), noise_std, std::move(actions));
}

double LinearGaussianBandit::mean_reward(int a) const { return dot(theta_, actions_[a]); }

StepResult LinearGaussianBandit::step(int, ActionId action, RandomSource& rng) const {
  const double y = mean_reward(action) + noise_std_ * rng.normal();
  return {Observation(std::vector<double>{y}), y, 0, true};
}

std::vector<Branch> LinearGaussianBandit::branches(int, ActionId) const {
  throw ContractViolation("LinearGaussianBandit: continuous observations are not enumerable");
}

QTable LinearGaussianBandit::q_star() const {
  QTable t;
  t.q.assign(1, std::vector<double>(actions_.size()));
  for (std::size_t a = 0; a < actions_.size(); ++a) t.q[0][a] = mean_reward(static_cast<int>(a));
  return t;
}

double LinearGaussianBandit::optimal_value() const {
  double best = mean_reward(0);
  for (int a = 1; a < num_actions(); ++a) best = std::max(best, mean_reward(a));
  return best;
}

// ------------------------------------------------------------- SparseLinear

SparseLinearBandit::SparseLinearBandit(int num_arms, int rewarding_arm)
    : num_arms_(num_arms), rewarding_arm_(rewarding_arm) {
  if (num_arms < 2 || (num_arms & (num_arms - 1)) != 0)
    throw ContractViolation("SparseLinearBandit: arm count must be a power of two >= 2");
  if (rewarding_arm < 0 || rewarding_arm >= num_arms)
    throw ContractViolation("SparseLinearBandit: rewarding arm out of range");
  build_actions();
}

SparseLinearBandit::SparseLinearBandit(int num_arms, std::uint64_t seed)
    : SparseLinearBandit(num_arms, RandomSource(seed).uniform_int(num_arms)) {}

void SparseLinearBandit::build_actions() {
  actions_.clear();
  for (int i = 0; i < num_arms_; ++i) {
    std::vector<double> v(static_cast<std::size_t>(num_arms_), 0.0);
    v[static_cast<std::size_t>(i)] = 1.0;
    actions_.push_back(std::move(v));
  }
  // Dyadic probe blocks: halves, quarters, ..., pairs.
  for (int block = num_arms_ / 2; block >= 2; block /= 2) {
    for (int start = 0; start < num_arms_; start += block) {
      std::vector<double> v(static_cast<std::size_t>(num_arms_), 0.0);
      for (int i = start; i < start + block; ++i) v[static_cast<std::size_t>(i)] = 0.5;
      actions_.push_back(std::move(v));
    }
  }
}

std::vector<int> SparseLinearBandit::action_support(int a) const {
  std::vector<int> support;
  for (int i = 0; i < num_arms_; ++i)
    if (actions_[a][static_cast<std::size_t>(i)] > 0.0) support.push_back(i);
  return support;
}

StepResult SparseLinearBandit::step(int, ActionId action, RandomSource&) const {
  const double y = actions_[action][static_cast<std::size_t>(rewarding_arm_)];
  return {Observation(std::vector<double>{y}), y, 0, true};
}

std::vector<Branch> SparseLinearBandit::branches(int, ActionId action) const {
  const double y = actions_[action][static_cast<std::size_t>(rewarding_arm_)];
  return {{1.0, Observation(std::vector<double>{y}), y, 0, true}};
}

QTable SparseLinearBandit::q_star() const {
  QTable t;
  t.q.assign(1, std::vector<double>(actions_.size()));
  for (std::size_t a = 0; a < actions_.size(); ++a)
    t.q[0][a] = actions_[a][static_cast<std::size_t>(rewarding_arm_)];
  return t;
}

// -------------------------------------------------------------- LogisticGvf

LogisticGvfBandit::LogisticGvfBandit(int dimension, int num_components, int num_actions,
                                     std::uint64_t seed)
    : dim_(dimension), num_components_(num_components) {
  if (dimension < 1 || num_components < 1 || num_actions < 2)
    throw ContractViolation("LogisticGvfBandit: bad sizes");
  RandomSource rng(seed);
  // Unknown parameter, scaled so logits land in an informative range.
  phi_.resize(static_cast<std::size_t>(dim_));
  double norm = 0.0;
  for (double& x : phi_) {
    x = rng.normal();
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : phi_) x *= 2.0 / norm;
  // Action sets with a near-tied best arm are redrawn: the identification
  // task is ill-posed when the top reward probabilities are inseparable.
  for (int attempt = 0; attempt < 500; ++attempt) {
    actions_.assign(static_cast<std::size_t>(num_actions), {});
    for (auto& mat : actions_) {
      mat.resize(static_cast<std::size_t>(num_components_));
      for (auto& col : mat) {
        col.resize(static_cast<std::size_t>(dim_));
        double n2 = 0.0;
        for (double& x : col) {
          x = rng.normal();
          n2 += x * x;
        }
        n2 = std::sqrt(n2);
        for (double& x : col) x /= n2;
      }
    }
    double best = 0.0, second = 0.0;
    for (int a = 0; a < num_actions; ++a) {
      const double p = component_probability(a, 0);
      if (p > best) {
        second = best;
        best = p;
      } else if (p > second) {
        second = p;
      }
    }
    if (best - second >= 0.08) return;
  }
  throw NumericalDegeneracy("LogisticGvfBandit: could not separate a best arm");
}

double LogisticGvfBandit::component_probability(int a, int j) const {
  return sigmoid(dot(actions_[a][static_cast<std::size_t>(j)], phi_));
}

StepResult LogisticGvfBandit::step(int, ActionId action, RandomSource& rng) const {
  std::vector<double> bits(static_cast<std::size_t>(num_components_));
  for (int j = 0; j < num_components_; ++j)
    bits[static_cast<std::size_t>(j)] = rng.bernoulli(component_probability(action, j)) ? 1.0 : 0.0;
  const double reward = bits[0];
  return {Observation(std::move(bits)), reward, 0, true};
}

std::vector<Branch> LogisticGvfBandit::branches(int, ActionId) const {
  throw ContractViolation("LogisticGvfBandit: use q_star, branch count is 2^K");
}

QTable LogisticGvfBandit::q_star() const {
  QTable t;
  t.q.assign(1, std::vector<double>(actions_.size()));
  for (std::size_t a = 0; a < actions_.size(); ++a)
    t.q[0][a] = component_probability(static_cast<int>(a), 0);
  return t;
}

double LogisticGvfBandit::optimal_value() const {
  double best = component_probability(0, 0);
  for (int a = 1; a < num_actions(); ++a) best = std::max(best, component_probability(a, 0));
  return best;
}

// -------------------------------------------------------------- Informative

InformativeBandit::InformativeBandit(int num_arms, int rewarding_arm)
    : num_arms_(num_arms), rewarding_arm_(rewarding_arm) {
  if (num_arms < 2) throw ContractViolation("InformativeBandit: needs >= 2 arms");
  if (rewarding_arm < 0 || rewarding_arm >= num_arms)
    throw ContractViolation("InformativeBandit: rewarding arm out of range");
}

InformativeBandit::InformativeBandit(int num_arms, std::uint64_t seed)
    : InformativeBandit(num_arms, RandomSource(seed).uniform_int(num_arms)) {}

StepResult InformativeBandit::step(int state, ActionId action, RandomSource&) const {
  return branches(state, action)[0].to_step();
}

std::vector<Branch> InformativeBandit::branches(int, ActionId action) const {
  if (action == revealing_arm()) {
    Observation obs(std::vector<double>{0.0, static_cast<double>(rewarding_arm_)});
    return {{1.0, std::move(obs), 0.0, 0, true}};
  }
  const double reward = action == rewarding_arm_ ? 1.0 : 0.0;
  Observation obs(std::vector<double>{reward, -1.0});
  return {{1.0, std::move(obs), reward, 0, true}};
}

}  // namespace rlinfo
