#pragma once

#include <cstdint>
#include <vector>

#include "rlinfo/enn/mlp.hpp"

namespace rlinfo {

// Epistemic index for an ensemble ENN: uniform reference distribution over
// the member count.
struct EpistemicIndex {
  int z = 0;

  static EpistemicIndex sample(int num_members, RandomSource& rng) {
    return {rng.uniform_int(num_members)};
  }
};

// Ensemble of MLPs, each paired with a frozen additive prior network of
// identical architecture: forward(x, z) = trainable_z(x) + scale * prior_z(x).
class EnsembleMlp {
 public:
  EnsembleMlp(int num_members, const std::vector<int>& widths, double prior_scale,
              RandomSource& rng)
      : prior_scale_(prior_scale) {
    if (num_members < 1) throw ContractViolation("EnsembleMlp: needs >= 1 member");
    for (int k = 0; k < num_members; ++k) {
      trainable_.push_back(Mlp::create(widths, rng));
      prior_.push_back(Mlp::create(widths, rng));
    }
    work_trainable_.resize(static_cast<std::size_t>(num_members));
    work_prior_.resize(static_cast<std::size_t>(num_members));
  }

  int num_members() const { return static_cast<int>(trainable_.size()); }
  int input_dim() const { return trainable_.front().input_dim(); }
  int output_dim() const { return trainable_.front().output_dim(); }
  double prior_scale() const { return prior_scale_; }

  const Mlp& member(int z) const { return trainable_[check(z)]; }
  Mlp& mutable_member(int z) { return trainable_[check(z)]; }
  const Mlp& prior_member(int z) const { return prior_[check(z)]; }

  // Output for one-hot input `index` under epistemic index z.
  std::vector<double> forward_onehot(int index, int z) const {
    const std::size_t zz = check(z);
    std::vector<double> out = trainable_[zz].forward_onehot(index, work_trainable_[zz]);
    if (prior_scale_ != 0.0) {
      const std::vector<double>& p = prior_[zz].forward_onehot(index, work_prior_[zz]);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += prior_scale_ * p[i];
    }
    return out;
  }

  std::vector<double> forward(const std::vector<double>& x, int z) const {
    const std::size_t zz = check(z);
    std::vector<double> out = trainable_[zz].forward(x, work_trainable_[zz]);
    if (prior_scale_ != 0.0) {
      const std::vector<double>& p = prior_[zz].forward(x, work_prior_[zz]);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += prior_scale_ * p[i];
    }
    return out;
  }

  // FNV-1a over the prior parameter bytes; pinning this across a training
  // schedule asserts prior immutability.
  std::uint64_t prior_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto eat = [&h](const std::vector<double>& v) {
      for (double d : v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(d));
        __builtin_memcpy(&bits, &d, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
          h ^= (bits >> (8 * i)) & 0xff;
          h *= 1099511628211ULL;
        }
      }
    };
    for (const Mlp& net : prior_)
      for (const Mlp::Layer& l : net.layers) {
        eat(l.w);
        eat(l.b);
      }
    return h;
  }

 private:
  std::size_t check(int z) const {
    if (z < 0 || z >= num_members())
      throw ContractViolation("EnsembleMlp: epistemic index out of range");
    return static_cast<std::size_t>(z);
  }

  std::vector<Mlp> trainable_;
  std::vector<Mlp> prior_;
  double prior_scale_;
  mutable std::vector<Mlp::Workspace> work_trainable_;
  mutable std::vector<Mlp::Workspace> work_prior_;
};

}  // namespace rlinfo
