#include "rlinfo/envs/factory.hpp"

#include "rlinfo/envs/bandits.hpp"
#include "rlinfo/envs/chains.hpp"

namespace rlinfo {

std::unique_ptr<Environment> make_environment(const EnvParams& params, std::uint64_t seed) {
  const std::string& name = params.name;
  if (name == "bernoulli_bandit" || name == "many_armed_bandit") {
    const int arms = static_cast<int>(params.get("arms", 2));
    return std::make_unique<ManyArmedBandit>(arms, seed);
  }
  if (name == "gaussian_bandit") {
    const int d = static_cast<int>(params.get("dimension", 3));
    const double noise = params.get("noise_std", 0.1);
    RandomSource rng(RandomSource(seed).split("gaussian_theta"));
    std::vector<double> theta(static_cast<std::size_t>(d));
    for (double& x : theta) x = rng.uniform();
    return std::make_unique<LinearGaussianBandit>(
        LinearGaussianBandit::canonical(std::move(theta), noise));
  }
  if (name == "sparse_bandit") {
    const int arms = static_cast<int>(params.get("arms", 16));
    return std::make_unique<SparseLinearBandit>(arms, seed);
  }
  if (name == "logistic_bandit") {
    const int d = static_cast<int>(params.get("dimension", 30));
    const int k = static_cast<int>(params.get("components", 10));
    const int actions = static_cast<int>(params.get("arms", d));
    return std::make_unique<LogisticGvfBandit>(d, k, actions, seed);
  }
  if (name == "informative_bandit") {
    const int arms = static_cast<int>(params.get("arms", 8));
    return std::make_unique<InformativeBandit>(arms, seed);
  }
  if (name == "deep_sea") {
    const int size = static_cast<int>(params.get("size", 10));
    return std::make_unique<DeepSea>(size, seed);
  }
  if (name == "reward_chain") {
    const int tau = static_cast<int>(params.get("tau", 4));
    std::vector<double> exits(static_cast<std::size_t>(tau - 1), params.get("exit_reward", 0.5));
    return std::make_unique<RewardChain>(tau, std::move(exits), seed);
  }
  if (name == "informative_chain") {
    const int tau = static_cast<int>(params.get("tau", 8));
    return std::make_unique<InformativeChain>(tau, seed);
  }
  if (name == "ring_mdp") {
    const int locations = static_cast<int>(params.get("locations", 8));
    const int tau = static_cast<int>(params.get("tau", 4));
    return std::make_unique<RingMdp>(locations, tau, seed);
  }
  throw ContractViolation("unknown environment name '" + name + "'");
}

}  // namespace rlinfo
